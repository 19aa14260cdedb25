// swcode: command-line front end for the Slepian-Wolf coding library.
//
// Exit codes: 0 success, 1 usage, 2 malformed message or file contents,
// 3 decode failure, 4 I/O error.

#include <cctype>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swcode/bits.hpp"
#include "swcode/linear_scheme.hpp"
#include "swcode/params.hpp"
#include "swcode/protocol.hpp"
#include "swcode/rates.hpp"
#include "swcode/simulation.hpp"
#include "swcode/wire.hpp"

namespace {

using namespace swc;

enum Exit : int { kOk = 0, kUsage = 1, kFormat = 2, kDecode = 3, kIo = 4 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecodeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path);
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string as_text(const std::vector<std::uint8_t>& bytes) { return {bytes.begin(), bytes.end()}; }

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

// Bit strings on disk: "hex" is <len>:<hex>, "bits" is a 0/1 string,
// "binary" is an 8-byte big-endian bit length followed by packed bytes.
BitString read_bits(const std::string& path, const std::string& format) {
  const auto bytes = read_file(path);
  try {
    if (format == "binary") return BitString::from_binary(bytes);
    if (format == "bits") return BitString::from_string(trim(as_text(bytes)));
    return BitString::from_hex(trim(as_text(bytes)));
  } catch (const UsageError& e) {
    throw WireError(path + ": " + e.what());
  }
}

void write_bits(const std::string& path, const BitString& x, const std::string& format) {
  if (format == "binary") {
    write_file(path, x.to_binary());
  } else if (format == "bits") {
    write_text(path, x.to_string() + "\n");
  } else {
    write_text(path, x.to_hex() + "\n");
  }
}

struct ParamFlags {
  std::string alpha = "0.02";
  std::string lambda = "0.5";
  std::string mode = "model1";
  std::optional<std::size_t> k, s, t;
  std::optional<double> delta, sigma;
  std::optional<unsigned> r, kappa1, kappa2, w;

  void add_shape(CLI::App* app) {
    app->add_option("--alpha", alpha, "distance fraction (decimal or p/q)")->capture_default_str();
    app->add_option("--lambda", lambda, "share of X sent verbatim (decimal or p/q)")->capture_default_str();
    app->add_option("--mode", mode, "model1 | model2 | model3")->capture_default_str();
    app->add_option("--k", k, "block length");
    app->add_option("--r", r, "hash surplus bits");
    app->add_option("--kappa1", kappa1, "hash constant kappa1");
    app->add_option("--kappa2", kappa2, "hash constant kappa2");
    app->add_option("--sigma", sigma, "RS corruption budget fraction");
    app->add_option("--s", s, "RS capability in blocks (overrides sigma)");
    app->add_option("--w", w, "RS symbol width");
    add_receiver(app);
  }
  // delta and t are not carried in message headers; the decoder needs them too.
  void add_receiver(CLI::App* app) {
    app->add_option("--delta", delta, "deviation slack (default k^-0.49)");
    app->add_option("--t", t, "hash index independence (default ceil(sqrt m))");
  }

  ParamOverrides overrides() const {
    ParamOverrides o;
    o.k = k;
    o.delta = delta;
    o.r = r;
    o.kappa1 = kappa1;
    o.kappa2 = kappa2;
    o.sigma = sigma;
    o.s = s;
    o.w = w;
    o.t = t;
    return o;
  }
  ProtocolParams derive(std::size_t length) const {
    return derive_params(length, Rational::parse(alpha), Rational::parse(lambda), parse_mode(mode), overrides());
  }
};

void print_params(const ProtocolParams& p) {
  std::fprintf(stderr,
               "n=%zu (original %zu) k=%zu m=%zu s=%zu w=%u tau_a=%zu%s tau_b=%zu%s t=%zu delta=%.4f payload_a=%zu "
               "payload_b=%zu\n",
               p.n, p.original_len, p.k, p.m, p.s, p.w, p.tau_a, p.tau_a_capped ? " (capped)" : "", p.tau_b,
               p.tau_b_capped ? " (capped)" : "", p.t, p.delta, p.payload_a_bits(), p.payload_b_bits());
}

// ---- simulate -------------------------------------------------------------

struct SimulateCmd {
  ParamFlags params;
  std::size_t n = 4096;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::string jsonl;
  std::string summary;

  void setup(CLI::App* app) {
    app->add_option("--n", n, "input length in bits (padded to a multiple of k)")->capture_default_str();
    app->add_option("--trials", trials, "number of trials")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "master seed")->capture_default_str();
    app->add_option("--jsonl", jsonl, "per-trial log (JSON lines)");
    app->add_option("--summary", summary, "summary CSV (default: stdout)");
    params.add_shape(app);
  }

  int run() const {
    SimulationConfig cfg;
    cfg.n = n;
    cfg.alpha = Rational::parse(params.alpha);
    cfg.lambda = Rational::parse(params.lambda);
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.mode = parse_mode(params.mode);
    cfg.overrides = params.overrides();
    const SimulationResult result = run_simulation(cfg);
    print_params(result.summary.params);
    if (!jsonl.empty()) write_text(jsonl, trials_jsonl(result.records));
    const std::string csv = summary_csv(result.summary);
    if (summary.empty()) {
      std::cout << csv;
    } else {
      write_text(summary, csv);
    }
    return kOk;
  }
};

// ---- encode / decode ------------------------------------------------------

struct EncodeCmd {
  bool alice = true;
  ParamFlags params;
  std::string input;
  std::string output;
  std::string format = "hex";
  std::string seeds_out;
  std::uint64_t seed = 1;
  std::uint64_t index = 0;

  void setup(CLI::App* app) {
    app->add_option("--input", input, "input bit string file")->required();
    app->add_option("--output", output, "message file")->required();
    app->add_option("--format", format, "hex | bits | binary")->capture_default_str()->check(
        CLI::IsMember({"hex", "bits", "binary"}));
    app->add_option("--seed", seed, "master seed")->capture_default_str();
    app->add_option("--index", index, "run index mixed into the seeds")->capture_default_str();
    app->add_option("--seeds-out", seeds_out, "side-channel seed file (required outside model3)");
    params.add_shape(app);
  }

  int run() const {
    const BitString x = read_bits(input, format);
    const ProtocolParams p = params.derive(x.size());
    print_params(p);
    if (p.mode != Mode::Model3 && seeds_out.empty()) {
      throw UsageError("--seeds-out is required in " + to_string(p.mode) + " (seeds travel out of band)");
    }
    std::vector<Seed> side;
    if (alice) {
      const AliceSeeds s = make_alice_seeds(seed, index);
      write_file(output, serialize(alice_encode(x, p, s)));
      side = {s.perm_i, s.perm_a, s.hash_indices_a};
    } else {
      const BobSeeds s = make_bob_seeds(seed, index);
      write_file(output, serialize(bob_encode(x, p, s)));
      side = {s.perm_b, s.hash_indices_b};
    }
    if (!seeds_out.empty()) write_file(seeds_out, serialize_seeds(side));
    return kOk;
  }
};

struct DecodeCmd {
  ParamFlags params;
  std::string alice;
  std::string bob;
  std::vector<std::string> seed_files;
  std::string out_x;
  std::string out_y;
  std::string format = "hex";

  void setup(CLI::App* app) {
    app->add_option("--alice", alice, "Alice's message")->required();
    app->add_option("--bob", bob, "Bob's message")->required();
    app->add_option("--seeds", seed_files, "side-channel seed file(s), needed outside model3");
    app->add_option("--out-x", out_x, "recovered X")->required();
    app->add_option("--out-y", out_y, "recovered Y")->required();
    app->add_option("--format", format, "hex | bits | binary")->capture_default_str()->check(
        CLI::IsMember({"hex", "bits", "binary"}));
    params.add_receiver(app);
  }

  int run() const {
    const ParamOverrides o = params.overrides();
    const AliceMessage a = deserialize_alice(read_file(alice), o);
    const BobMessage b = deserialize_bob(read_file(bob), o);
    std::optional<AliceSeeds> sa;
    std::optional<BobSeeds> sb;
    if (a.params.mode != Mode::Model3) {
      if (seed_files.empty()) throw UsageError("--seeds is required outside model3");
      std::map<Role, Seed> by_role;
      for (const auto& path : seed_files) {
        for (const Seed& s : deserialize_seeds(read_file(path))) by_role[s.role] = s;
      }
      const auto get = [&](Role r) {
        const auto it = by_role.find(r);
        if (it == by_role.end()) throw UsageError("seed files lack a seed for role " + std::to_string(int(r)));
        return it->second;
      };
      sa = AliceSeeds{get(Role::PermI), get(Role::PermA), get(Role::HashIndicesA)};
      sb = BobSeeds{get(Role::PermB), get(Role::HashIndicesB)};
    }
    print_params(a.params);
    const DecodeReport report = charlie_decode(a, b, sa, sb);
    std::fprintf(stderr, "phase Y: direct=%zu repaired=%zu no_candidate=%zu ambiguous=%zu\n", report.phase_y.direct,
                 report.phase_y.repaired, report.phase_y.no_candidate, report.phase_y.ambiguous);
    if (report.phase_y.rs_ok) {
      std::fprintf(stderr, "phase X: direct=%zu repaired=%zu no_candidate=%zu ambiguous=%zu\n",
                   report.phase_x.direct, report.phase_x.repaired, report.phase_x.no_candidate,
                   report.phase_x.ambiguous);
    }
    if (!report.success) throw DecodeFailure(std::string("decode failed: ") + to_string(report.failure));
    write_bits(out_x, report.x, format);
    write_bits(out_y, report.y, format);
    std::fprintf(stderr, "decoded, distance %zu\n", report.distance);
    return kOk;
  }
};

// ---- detscheme ------------------------------------------------------------

std::string det_to_text(const DetMessage& m) { return "bits " + m.bits.to_hex() + "\nsyndrome " + m.syndrome.to_hex() + "\n"; }

DetMessage det_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string key, value;
  DetMessage m;
  bool have_bits = false, have_syn = false;
  while (in >> key >> value) {
    if (key == "bits") {
      m.bits = BitString::from_hex(value);
      have_bits = true;
    } else if (key == "syndrome") {
      m.syndrome = BitString::from_hex(value);
      have_syn = true;
    } else {
      throw WireError("unknown field '" + key + "' in linear-scheme message");
    }
  }
  if (!have_bits || !have_syn) throw WireError("linear-scheme message lacks bits or syndrome");
  return m;
}

struct DetCmd {
  std::string code_desc = "hamming(3)";
  std::string code_file;
  double lambda = 0.5;
  std::string out;
  std::string input;
  std::string party = "alice";
  std::string alice;
  std::string bob;
  std::string out_x;
  std::string out_y;
  std::string format = "hex";
  CLI::App* build = nullptr;
  CLI::App* encode = nullptr;
  CLI::App* decode = nullptr;
  CLI::App* self_test = nullptr;

  void code_options(CLI::App* app) {
    app->add_option("--code", code_desc, "hamming(r) | bch(n,t) | random_gv(n,checks,t,seed)")->capture_default_str();
    app->add_option("--code-file", code_file, "code file written by build-code");
  }
  void lambda_option(CLI::App* app) {
    app->add_option("--lambda", lambda, "split fraction")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  }

  void setup(CLI::App* app) {
    app->require_subcommand(1);
    build = app->add_subcommand("build-code", "construct and certify a code");
    code_options(build);
    build->add_option("--out", out, "code file (default: stdout)");

    encode = app->add_subcommand("encode", "syndrome-encode one party's string");
    code_options(encode);
    lambda_option(encode);
    encode->add_option("--party", party, "alice | bob")->check(CLI::IsMember({"alice", "bob"}))->capture_default_str();
    encode->add_option("--input", input, "input bit string file")->required();
    encode->add_option("--output", out, "message file")->required();
    encode->add_option("--format", format, "hex | bits | binary")->capture_default_str();

    decode = app->add_subcommand("decode", "recover both strings");
    code_options(decode);
    lambda_option(decode);
    decode->add_option("--alice", alice, "Alice's message")->required();
    decode->add_option("--bob", bob, "Bob's message")->required();
    decode->add_option("--out-x", out_x, "recovered X")->required();
    decode->add_option("--out-y", out_y, "recovered Y")->required();
    decode->add_option("--format", format, "hex | bits | binary")->capture_default_str();

    self_test = app->add_subcommand("self-test", "exhaustive round trip over all pairs within the radius");
    code_options(self_test);
    lambda_option(self_test);
  }

  LinearCode load() const {
    if (!code_file.empty()) return LinearCode::parse(as_text(read_file(code_file)));
    return build_code(code_desc);
  }

  int run() const {
    const LinearCode code = load();
    if (build->parsed()) {
      const std::string text = code.serialize();
      std::fprintf(stderr, "%s: n=%zu checks=%zu radius=%zu\n", code.name().c_str(), code.n(), code.checks(),
                   code.radius());
      if (out.empty()) {
        std::cout << text;
      } else {
        write_text(out, text);
      }
      return kOk;
    }
    const std::size_t split = det_split(code, lambda);
    if (encode->parsed()) {
      const BitString x = read_bits(input, format);
      const DetMessage m = party == "alice" ? det_encode_alice(x, code, split) : det_encode_bob(x, code, split);
      write_text(out, det_to_text(m));
      std::fprintf(stderr, "%s message: %zu bits\n", party.c_str(), m.size());
      return kOk;
    }
    if (decode->parsed()) {
      const auto result =
          det_decode(det_from_text(as_text(read_file(alice))), det_from_text(as_text(read_file(bob))), code, split);
      if (!result) throw DecodeFailure("difference pattern outside the code radius");
      write_bits(out_x, result->first, format);
      write_bits(out_y, result->second, format);
      return kOk;
    }
    return run_self_test(code, split);
  }

  static int run_self_test(const LinearCode& code, std::size_t split) {
    if (code.n() > 20) throw UsageError("self-test enumerates all 2^n strings; use n <= 20");
    const std::size_t n = code.n();
    std::size_t total = 0, ok = 0;
    // All error patterns of weight <= radius.
    std::vector<BitString> patterns;
    std::function<void(std::size_t, BitString&, std::size_t)> gen = [&](std::size_t start, BitString& e,
                                                                        std::size_t left) {
      patterns.push_back(e);
      if (left == 0) return;
      for (std::size_t i = start; i < n; ++i) {
        e.flip(i);
        gen(i + 1, e, left - 1);
        e.flip(i);
      }
    };
    BitString e(n);
    gen(0, e, code.radius());
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      const BitString x = BitString::from_uint(v, n);
      for (const auto& pat : patterns) {
        const BitString y = x ^ pat;
        const auto r = det_decode(det_encode_alice(x, code, split), det_encode_bob(y, code, split), code, split);
        ++total;
        if (r && r->first == x && r->second == y) ++ok;
      }
    }
    std::printf("%zu/%zu pairs OK\n", ok, total);
    return ok == total ? kOk : kDecode;
  }
};

// ---- region ---------------------------------------------------------------

struct RegionCmd {
  double alpha = 0.1;
  double grid = 0.01;
  double slack = 0.0;
  std::string out;

  void setup(CLI::App* app) {
    app->add_option("--alpha", alpha, "distance fraction, 0 <= alpha < 1/2")->capture_default_str();
    app->add_option("--grid", grid, "grid step, 0 < step")->capture_default_str();
    app->add_option("--slack", slack, "allowance for lower-order terms")->capture_default_str();
    app->add_option("--out", out, "CSV file (default: stdout)");
  }

  int run() const {
    if (!(alpha >= 0 && alpha < 0.5)) throw UsageError("alpha must satisfy 0 <= alpha < 1/2");
    if (!(grid > 0)) throw UsageError("grid step must be positive");
    const std::string csv = region_csv(alpha, grid, slack);
    if (out.empty()) {
      std::cout << csv;
    } else {
      write_text(out, csv);
    }
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial Slepian-Wolf coding: randomized protocol, linear syndrome scheme, rate regions"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  SimulateCmd simulate;
  EncodeCmd enc_alice;
  EncodeCmd enc_bob;
  enc_bob.alice = false;
  DecodeCmd decode;
  DetCmd det;
  RegionCmd region;

  simulate.setup(app.add_subcommand("simulate", "Monte-Carlo runs of the randomized protocol"));
  auto* ea = app.add_subcommand("encode-alice", "encode X into Alice's message");
  enc_alice.setup(ea);
  auto* eb = app.add_subcommand("encode-bob", "encode Y into Bob's message");
  enc_bob.setup(eb);
  decode.setup(app.add_subcommand("decode", "recover X and Y from both messages"));
  det.setup(app.add_subcommand("detscheme", "deterministic linear syndrome scheme"));
  region.setup(app.add_subcommand("region", "export the rate-region classification grid"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "simulate") return simulate.run();
    if (name == "encode-alice") return enc_alice.run();
    if (name == "encode-bob") return enc_bob.run();
    if (name == "decode") return decode.run();
    if (name == "detscheme") return det.run();
    return region.run();
  } catch (const WireError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFormat;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const DecodeFailure& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kDecode;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIo;
  }
}
