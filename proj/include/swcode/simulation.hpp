#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "swcode/params.hpp"
#include "swcode/protocol.hpp"

namespace swc {

struct SimulationConfig {
  std::size_t n = 4096;  // input length before padding
  Rational alpha{1, 50};
  Rational lambda{1, 2};
  std::size_t trials = 200;
  std::uint64_t master_seed = 1;
  Mode mode = Mode::Model1;
  ParamOverrides overrides;
  unsigned workers = 0;  // 0: SWC_WORKERS or the hardware thread count
};

struct TrialRecord {
  std::size_t index = 0;
  std::size_t flips = 0;
  bool success = false;
  FailureKind failure = FailureKind::None;
  PhaseStats phase_y;
  PhaseStats phase_x;
  std::size_t payload_a = 0;
  std::size_t payload_b = 0;
  std::size_t seed_bits_a = 0;  // in-band seed block, Model 3 only
  std::size_t seed_bits_b = 0;
  std::size_t message_bytes_a = 0;
  std::size_t message_bytes_b = 0;
};

struct SimulationSummary {
  ProtocolParams params;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t phase_y_overflow = 0;
  std::size_t phase_x_overflow = 0;
  std::size_t wire_errors = 0;
  std::size_t wrong_output = 0;
  double mean_candidates_y = 0;  // per trial
  double mean_candidates_x = 0;
  double mean_repaired_y = 0;
  double mean_repaired_x = 0;
  std::size_t payload_a = 0;
  std::size_t payload_b = 0;
  std::size_t seed_bits_a = 0;
  std::size_t seed_bits_b = 0;
  /// Measured payload minus the closed-form count, summed over trials.
  long long rate_residual = 0;

  std::size_t failures() const { return trials - successes; }
  double success_fraction() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0; }
};

struct SimulationResult {
  SimulationSummary summary;
  std::vector<TrialRecord> records;  // sorted by index
};

/// Worker count from SWC_WORKERS, else the hardware thread count (>= 1).
unsigned default_workers();

/// Runs one trial: sample a pair, encode, round-trip both messages through
/// the wire format, decode and compare against the inputs.
TrialRecord run_trial(const SimulationConfig& cfg, const ProtocolParams& params, std::size_t index);

SimulationResult run_simulation(const SimulationConfig& cfg);

/// One JSON object per line, in trial order.
std::string trials_jsonl(const std::vector<TrialRecord>& records);
/// Header row plus one value row.
std::string summary_csv(const SimulationSummary& summary);

}  // namespace swc
