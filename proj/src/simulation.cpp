#include "swcode/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "swcode/wire.hpp"

namespace swc {

unsigned default_workers() {
  if (const char* env = std::getenv("SWC_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

TrialRecord run_trial(const SimulationConfig& cfg, const ProtocolParams& params, std::size_t index) {
  TrialRecord rec;
  rec.index = index;
  PrgStream workload(derive_seed(cfg.master_seed, index, Role::Workload));
  const CorrelatedPair pair = sample_correlated_pair(params.original_len, cfg.alpha.value(), workload);
  rec.flips = pair.flips;

  const AliceSeeds sa = make_alice_seeds(cfg.master_seed, index);
  const BobSeeds sb = make_bob_seeds(cfg.master_seed, index);
  const AliceMessage ma = alice_encode(pair.x, params, sa);
  const BobMessage mb = bob_encode(pair.y, params, sb);
  rec.payload_a = ma.payload_bits();
  rec.payload_b = mb.payload_bits();

  const auto bytes_a = serialize(ma);
  const auto bytes_b = serialize(mb);
  rec.message_bytes_a = bytes_a.size();
  rec.message_bytes_b = bytes_b.size();
  if (params.mode == Mode::Model3) {
    rec.seed_bits_a = 8 * (1 + 3 * (3 + Seed::kBytes));
    rec.seed_bits_b = 8 * (1 + 2 * (3 + Seed::kBytes));
  }

  AliceMessage ra;
  BobMessage rb;
  try {
    ra = deserialize_alice(bytes_a, cfg.overrides);
    rb = deserialize_bob(bytes_b, cfg.overrides);
  } catch (const WireError&) {
    rec.failure = FailureKind::Wire;
    return rec;
  }
  const bool side = params.mode != Mode::Model3;
  const DecodeReport report = charlie_decode(ra, rb, side ? std::optional(sa) : std::nullopt,
                                             side ? std::optional(sb) : std::nullopt);
  rec.phase_y = report.phase_y;
  rec.phase_x = report.phase_x;
  if (!report.success) {
    rec.failure = report.failure;
  } else if (report.x != pair.x || report.y != pair.y) {
    rec.failure = FailureKind::WrongOutput;
  } else {
    rec.success = true;
  }
  return rec;
}

SimulationResult run_simulation(const SimulationConfig& cfg) {
  if (cfg.trials == 0) throw UsageError("trials must be at least 1");
  const ProtocolParams params = derive_params(cfg.n, cfg.alpha, cfg.lambda, cfg.mode, cfg.overrides);
  SimulationResult result;
  result.records.resize(cfg.trials);

  const unsigned workers = std::min<std::size_t>(cfg.workers ? cfg.workers : default_workers(), cfg.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; !failed && (i = next.fetch_add(1)) < cfg.trials;) {
      try {
        result.records[i] = run_trial(cfg, params, i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  SimulationSummary& s = result.summary;
  s.params = params;
  s.trials = cfg.trials;
  double cand_y = 0, cand_x = 0, rep_y = 0, rep_x = 0;
  for (const auto& r : result.records) {
    s.successes += r.success;
    s.phase_y_overflow += r.failure == FailureKind::PhaseYOverflow;
    s.phase_x_overflow += r.failure == FailureKind::PhaseXOverflow;
    s.wire_errors += r.failure == FailureKind::Wire;
    s.wrong_output += r.failure == FailureKind::WrongOutput;
    cand_y += static_cast<double>(r.phase_y.candidates);
    cand_x += static_cast<double>(r.phase_x.candidates);
    rep_y += static_cast<double>(r.phase_y.repaired);
    rep_x += static_cast<double>(r.phase_x.repaired);
    s.rate_residual += static_cast<long long>(r.payload_a + r.payload_b) -
                       static_cast<long long>(params.payload_a_bits() + params.payload_b_bits());
  }
  const double t = static_cast<double>(s.trials);
  s.mean_candidates_y = cand_y / t;
  s.mean_candidates_x = cand_x / t;
  s.mean_repaired_y = rep_y / t;
  s.mean_repaired_x = rep_x / t;
  s.payload_a = params.payload_a_bits();
  s.payload_b = params.payload_b_bits();
  s.seed_bits_a = result.records.front().seed_bits_a;
  s.seed_bits_b = result.records.front().seed_bits_b;
  return result;
}

namespace {

nlohmann::ordered_json phase_json(const PhaseStats& p) {
  return {{"direct", p.direct},         {"repaired", p.repaired},     {"no_candidate", p.no_candidate},
          {"ambiguous", p.ambiguous}, {"candidates", p.candidates}, {"rs_ok", p.rs_ok}};
}

}  // namespace

std::string trials_jsonl(const std::vector<TrialRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["trial"] = r.index;
    j["flips"] = r.flips;
    j["success"] = r.success;
    j["failure"] = to_string(r.failure);
    j["phase_y"] = phase_json(r.phase_y);
    j["phase_x"] = phase_json(r.phase_x);
    j["payload_a"] = r.payload_a;
    j["payload_b"] = r.payload_b;
    j["seed_bits_a"] = r.seed_bits_a;
    j["seed_bits_b"] = r.seed_bits_b;
    j["bytes_a"] = r.message_bytes_a;
    j["bytes_b"] = r.message_bytes_b;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string summary_csv(const SimulationSummary& s) {
  const ProtocolParams& p = s.params;
  std::ostringstream out;
  out << "mode,n,original_len,alpha,lambda,k,m,s,w,tau_a,tau_b,t,trials,successes,success_fraction,"
         "phase_y_overflow,phase_x_overflow,wire_errors,wrong_output,mean_candidates_y,mean_candidates_x,"
         "mean_repaired_y,mean_repaired_x,payload_a,payload_b,seed_bits_a,seed_bits_b,rate_residual\n";
  out << to_string(p.mode) << ',' << p.n << ',' << p.original_len << ',' << p.alpha.to_string() << ','
      << p.lambda.to_string() << ',' << p.k << ',' << p.m << ',' << p.s << ',' << p.w << ',' << p.tau_a << ','
      << p.tau_b << ',' << p.t << ',' << s.trials << ',' << s.successes << ',' << s.success_fraction() << ','
      << s.phase_y_overflow << ',' << s.phase_x_overflow << ',' << s.wire_errors << ',' << s.wrong_output << ','
      << s.mean_candidates_y << ',' << s.mean_candidates_x << ',' << s.mean_repaired_y << ',' << s.mean_repaired_x
      << ',' << s.payload_a << ',' << s.payload_b << ',' << s.seed_bits_a << ',' << s.seed_bits_b << ','
      << s.rate_residual << '\n';
  return out.str();
}

}  // namespace swc
