#include "swcode/wire.hpp"

#include <algorithm>
#include <cstring>
#include <string>

namespace swc {

namespace {

constexpr char kMagic[4] = {'S', 'W', 'C', '1'};
constexpr char kSeedMagic[4] = {'S', 'W', 'S', '1'};

class Writer {
 public:
  void u8(std::uint64_t v) { put(v, 1); }
  void u16(std::uint64_t v) { put(v, 2); }
  void u32(std::uint64_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}
  std::uint64_t u8() { return get(1); }
  std::uint64_t u16() { return get(2); }
  std::uint64_t u32() { return get(4); }
  std::uint64_t u64() { return get(8); }
  std::span<const std::uint8_t> bytes(std::size_t count) {
    need(count);
    auto s = data_.subspan(pos_, count);
    pos_ += count;
    return s;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t count) const {
    if (data_.size() - pos_ < count) throw WireError("message truncated");
  }
  std::uint64_t get(std::size_t width) {
    need(width);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v = v << 8 | data_[pos_ + i];
    pos_ += width;
    return v;
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

void write_header(Writer& w, const ProtocolParams& p, Party party) {
  if (p.k > 0xFFFF || p.s > 0xFFFF || p.r > 0xFF || p.kappa1 > 0xFF || p.kappa2 > 0xFF) {
    throw UsageError("parameter does not fit its header field");
  }
  w.bytes(std::span(reinterpret_cast<const std::uint8_t*>(kMagic), 4));
  w.u8(kWireVersion);
  w.u8(static_cast<unsigned>(party) << 4 | static_cast<unsigned>(p.mode));
  w.u64(p.n);
  w.u64(p.original_len);
  w.u32(p.alpha.num);
  w.u32(p.alpha.den);
  w.u32(p.lambda.num);
  w.u32(p.lambda.den);
  w.u16(p.k);
  w.u16(p.s);
  w.u8(p.w);
  w.u8(p.r);
  w.u8(p.kappa1);
  w.u8(p.kappa2);
}

void check_magic(Reader& r) {
  const auto magic = r.bytes(4);
  if (std::memcmp(magic.data(), kMagic, 4) != 0) throw WireError("bad magic");
}

ProtocolParams read_header(Reader& r, Party expected, const ParamOverrides& overrides) {
  check_magic(r);
  if (r.u8() != kWireVersion) throw WireError("unsupported version");
  const auto mode_byte = static_cast<unsigned>(r.u8());
  if ((mode_byte >> 4) != static_cast<unsigned>(expected)) throw WireError("message belongs to the other party");
  const unsigned mode = mode_byte & 0xF;
  if (mode < 1 || mode > 3) throw WireError("unknown mode");
  const auto n = r.u64();
  const auto original_len = r.u64();
  Rational alpha{static_cast<std::uint32_t>(r.u32()), 0};
  alpha.den = static_cast<std::uint32_t>(r.u32());
  Rational lambda{static_cast<std::uint32_t>(r.u32()), 0};
  lambda.den = static_cast<std::uint32_t>(r.u32());
  const auto k = r.u16();
  const auto s = r.u16();
  const auto w = static_cast<unsigned>(r.u8());
  const auto rr = static_cast<unsigned>(r.u8());
  const auto kappa1 = static_cast<unsigned>(r.u8());
  const auto kappa2 = static_cast<unsigned>(r.u8());
  try {
    return params_from_header(n, original_len, alpha, lambda, static_cast<Mode>(mode), k, s, w, rr, kappa1, kappa2,
                              overrides);
  } catch (const UsageError& e) {
    throw WireError(std::string("inconsistent header: ") + e.what());
  }
}

void write_seeds(Writer& w, const std::vector<Seed>& seeds) {
  w.u8(seeds.size());
  for (const Seed& s : seeds) {
    w.u8(static_cast<unsigned>(s.role));
    w.u16(s.bytes.size());
    w.bytes(s.bytes);
  }
}

std::vector<Seed> read_seeds(Reader& r, std::initializer_list<Role> roles) {
  if (r.u8() != roles.size()) throw WireError("unexpected seed count");
  std::vector<Seed> out;
  for (Role role : roles) {
    if (r.u8() != static_cast<unsigned>(role)) throw WireError("unexpected seed role");
    if (r.u16() != Seed::kBytes) throw WireError("unexpected seed length");
    Seed s;
    s.role = role;
    const auto b = r.bytes(Seed::kBytes);
    std::copy(b.begin(), b.end(), s.bytes.begin());
    out.push_back(s);
  }
  return out;
}

class BitSink {
 public:
  explicit BitSink(std::size_t total) : bits_(total) {}
  void put(std::uint64_t value, std::size_t width) {
    bits_.set_bits(pos_, static_cast<unsigned>(width), value);
    pos_ += width;
  }
  void put(const BitString& b) {
    for (std::size_t i = 0; i < b.size(); ++i) bits_.set(pos_++, b.get(i));
  }
  const BitString& bits() const { return bits_; }

 private:
  BitString bits_;
  std::size_t pos_ = 0;
};

class BitSource {
 public:
  explicit BitSource(BitString bits) : bits_(std::move(bits)) {}
  std::uint64_t get(std::size_t width) {
    const auto v = bits_.get_bits(pos_, static_cast<unsigned>(width));
    pos_ += width;
    return v;
  }
  BitString take(std::size_t count) {
    BitString out(count);
    for (std::size_t i = 0; i < count; ++i) out.set(i, bits_.get(pos_++));
    return out;
  }

 private:
  BitString bits_;
  std::size_t pos_ = 0;
};

BitString read_payload(Reader& r, std::size_t bits) {
  if (r.remaining() != (bits + 7) / 8) throw WireError("payload length does not match the parameters");
  try {
    return BitString::from_bytes(r.bytes(r.remaining()), bits);
  } catch (const UsageError&) {
    throw WireError("non-zero payload padding");
  }
}

void put_common(BitSink& sink, const ProtocolParams& p, const std::vector<std::uint64_t>& hashes, std::size_t tau,
                const std::vector<FieldElement>& checksums) {
  for (std::uint64_t h : hashes) sink.put(h, tau);
  for (FieldElement c : checksums) sink.put(c, p.w);
}

template <typename Msg>
void read_common(BitSource& src, const ProtocolParams& p, Msg& msg, std::size_t tau) {
  msg.hashes.resize(p.m);
  for (auto& h : msg.hashes) h = src.get(tau);
  msg.checksums.resize(2 * p.s + 1);
  for (auto& c : msg.checksums) c = static_cast<FieldElement>(src.get(p.w));
}

void check_sizes(const ProtocolParams& p, std::size_t hashes, std::size_t checksums) {
  if (hashes != p.m || checksums != 2 * p.s + 1) throw UsageError("message field sizes do not match the parameters");
}

}  // namespace

std::vector<std::uint8_t> serialize(const AliceMessage& msg) {
  const ProtocolParams& p = msg.params;
  check_sizes(p, msg.hashes.size(), msg.checksums.size());
  if (msg.sampled.size() != p.sampled_bits()) throw UsageError("sampled bit count does not match the parameters");
  Writer w;
  write_header(w, p, Party::Alice);
  if (p.mode == Mode::Model3) {
    if (!msg.seeds) throw UsageError("Model 3 message needs its seeds");
    write_seeds(w, {msg.seeds->perm_i, msg.seeds->perm_a, msg.seeds->hash_indices_a});
  }
  BitSink sink(msg.payload_bits());
  sink.put(msg.sampled);
  put_common(sink, p, msg.hashes, p.tau_a, msg.checksums);
  w.bytes(sink.bits().to_bytes());
  return w.take();
}

std::vector<std::uint8_t> serialize(const BobMessage& msg) {
  const ProtocolParams& p = msg.params;
  check_sizes(p, msg.hashes.size(), msg.checksums.size());
  Writer w;
  write_header(w, p, Party::Bob);
  if (p.mode == Mode::Model3) {
    if (!msg.seeds) throw UsageError("Model 3 message needs its seeds");
    write_seeds(w, {msg.seeds->perm_b, msg.seeds->hash_indices_b});
  }
  BitSink sink(msg.payload_bits());
  put_common(sink, p, msg.hashes, p.tau_b, msg.checksums);
  w.bytes(sink.bits().to_bytes());
  return w.take();
}

AliceMessage deserialize_alice(std::span<const std::uint8_t> bytes, const ParamOverrides& overrides) {
  Reader r(bytes);
  AliceMessage msg;
  msg.params = read_header(r, Party::Alice, overrides);
  const ProtocolParams& p = msg.params;
  if (p.mode == Mode::Model3) {
    const auto s = read_seeds(r, {Role::PermI, Role::PermA, Role::HashIndicesA});
    msg.seeds = AliceSeeds{s[0], s[1], s[2]};
  }
  BitSource src(read_payload(r, p.sampled_bits() + p.m * p.tau_a + p.checksum_bits()));
  msg.sampled = src.take(p.sampled_bits());
  read_common(src, p, msg, p.tau_a);
  return msg;
}

BobMessage deserialize_bob(std::span<const std::uint8_t> bytes, const ParamOverrides& overrides) {
  Reader r(bytes);
  BobMessage msg;
  msg.params = read_header(r, Party::Bob, overrides);
  const ProtocolParams& p = msg.params;
  if (p.mode == Mode::Model3) {
    const auto s = read_seeds(r, {Role::PermB, Role::HashIndicesB});
    msg.seeds = BobSeeds{s[0], s[1]};
  }
  BitSource src(read_payload(r, p.m * p.tau_b + p.checksum_bits()));
  read_common(src, p, msg, p.tau_b);
  return msg;
}

Party message_party(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  check_magic(r);
  r.u8();
  const auto party = static_cast<unsigned>(r.u8()) >> 4;
  if (party != 1 && party != 2) throw WireError("unknown party");
  return static_cast<Party>(party);
}

std::vector<std::uint8_t> serialize_seeds(const std::vector<Seed>& seeds) {
  if (seeds.size() > 0xFF) throw UsageError("too many seeds");
  Writer w;
  w.bytes(std::span(reinterpret_cast<const std::uint8_t*>(kSeedMagic), 4));
  w.u8(seeds.size());
  for (const Seed& s : seeds) w.bytes(s.serialize());
  return w.take();
}

std::vector<Seed> deserialize_seeds(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.bytes(4);
  if (std::memcmp(magic.data(), kSeedMagic, 4) != 0) throw WireError("bad seed file magic");
  const auto count = r.u8();
  std::vector<Seed> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    try {
      out.push_back(Seed::parse(r.bytes(1 + Seed::kBytes)));
    } catch (const UsageError& e) {
      throw WireError(std::string("bad seed: ") + e.what());
    }
  }
  if (r.remaining() != 0) throw WireError("trailing bytes after seeds");
  return out;
}

}  // namespace swc
