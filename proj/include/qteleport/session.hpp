// Copyright 2026 The qteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Alice and Bob as separate parties joined by a one-byte classical channel.
// Each session samples a single measurement trajectory from a counter-based
// generator, so a (seed, session index) pair always replays the same run.

#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include <json.hpp>

#include "qteleport/format.hpp"
#include "qteleport/parallel.hpp"
#include "qteleport/protocol.hpp"

namespace qtele {

// ---------------------------------------------------------------------------
// Wire format: bits 1..0 = Bell index - 1, bit 2 = z4, bits 7..3 zero.

inline std::uint8_t encode_message(const BranchOutcome& b) {
  detail::require(b.z4 == 0 || b.z4 == 1, "encode_message: z4 must be 0 or 1");
  return static_cast<std::uint8_t>((bell_index(b.bell) - 1) | (b.z4 << 2));
}

inline BranchOutcome decode_message(std::uint8_t byte) {
  if ((byte & 0xF8U) != 0)
    throw InvalidArgument("decode_message: high bits set in " + format_hex_byte(byte));
  return BranchOutcome{bell_from_index((byte & 0x3U) + 1), (byte >> 2) & 0x1};
}

// ---------------------------------------------------------------------------
// Counter-based generator: draw k of stream s under seed is a pure function
// of (seed, s, k).

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + kGolden))) {}

  std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + (counter + 1) * kGolden); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

namespace detail {

/// Index of the first cumulative weight exceeding u * total; zero-weight
/// entries are never chosen.
template <std::size_t N>
std::size_t pick(const std::array<double, N>& weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  detail::require(total > 0.0, "session: all outcomes have zero weight");
  const double target = u * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t k = 0; k < N; ++k) {
    if (weights[k] <= 0.0) continue;
    last = k;
    acc += weights[k];
    if (target < acc) return k;
  }
  return last;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Log

struct SessionEvent {
  std::string kind;
  std::string value;
};

struct SessionLog {
  std::uint64_t rng_seed = 0;
  std::uint64_t session_index = 0;
  std::string channel;
  std::vector<SessionEvent> events;

  // Summary of the trajectory, duplicated from the events for convenience.
  BranchOutcome outcome{};
  std::uint8_t message = 0;
  int correction_index = 0;
  double branch_probability = 0.0;
  double fidelity = 0.0;

  /// One "key=value" header line per field, then one "seq kind value" line
  /// per event, tab separated, LF terminated.
  std::string to_text() const {
    std::string s;
    s += "rng_seed=" + std::to_string(rng_seed) + "\n";
    s += "session_index=" + std::to_string(session_index) + "\n";
    s += "channel=" + channel + "\n";
    for (std::size_t k = 0; k < events.size(); ++k)
      s += std::to_string(k) + "\t" + events[k].kind + "\t" + events[k].value + "\n";
    return s;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["rng_seed"] = rng_seed;
    j["session_index"] = session_index;
    j["channel"] = channel;
    j["bell_outcome"] = std::string(bell_name(outcome.bell));
    j["z4"] = outcome.z4;
    j["message"] = format_hex_byte(message);
    j["correction_index"] = correction_index;
    j["branch_probability"] = branch_probability;
    j["fidelity"] = fidelity;
    auto& ev = j["events"] = nlohmann::ordered_json::array();
    for (const auto& e : events) ev.push_back({{"kind", e.kind}, {"value", e.value}});
    return j;
  }
};

// ---------------------------------------------------------------------------
// Parties

/// One-byte-per-session classical link from Alice to Bob.
class ClassicalChannel {
 public:
  void send(std::uint8_t byte) { queue_.push_back(byte); }

  std::uint8_t receive() {
    detail::require(!queue_.empty(), "ClassicalChannel: no message pending");
    const std::uint8_t b = queue_.front();
    queue_.pop_front();
    return b;
  }

  std::size_t pending() const { return queue_.size(); }

 private:
  std::deque<std::uint8_t> queue_;
};

/// The joint five-qubit state both parties act on. Alice owns qubits 1, 3, 4
/// and Bob owns 2, 5.
struct SharedState {
  Register reg;
};

class AliceParty {
 public:
  enum class Stage { Ready, Measured, Sent };

  explicit AliceParty(const CounterRng& rng) : rng_(rng) {}

  /// Bell measurement on (1,3), then H and a computational measurement on 4.
  BranchOutcome measure(SharedState& shared, SessionLog& log) {
    detail::require(stage_ == Stage::Ready, "AliceParty: already measured");
    std::array<double, 4> bell_weights{};
    for (std::size_t k = 0; k < 4; ++k) {
      Register trial = shared.reg;
      trial.apply(make_bell(kBellLabels[k]).projector(), {pos::kQ1, pos::kQ3});
      bell_weights[k] = std::max(0.0, trial.weight());
    }
    const BellLabel bell = kBellLabels[detail::pick(bell_weights, rng_.uniform(0))];
    shared.reg.apply(make_bell(bell).projector(), {pos::kQ1, pos::kQ3});
    log.events.push_back({"bell_outcome", std::string(bell_name(bell))});

    shared.reg.apply(gates::hadamard().matrix(), {pos::kQ4});
    std::array<double, 2> z_weights{};
    for (int z = 0; z < 2; ++z) {
      Register trial = shared.reg;
      trial.apply(detail::z_projector(z), {pos::kQ4});
      z_weights[static_cast<std::size_t>(z)] = std::max(0.0, trial.weight());
    }
    const int z4 = static_cast<int>(detail::pick(z_weights, rng_.uniform(1)));
    shared.reg.apply(detail::z_projector(z4), {pos::kQ4});
    log.events.push_back({"z4_outcome", std::to_string(z4)});

    outcome_ = BranchOutcome{bell, z4};
    stage_ = Stage::Measured;
    return outcome_;
  }

  void send(ClassicalChannel& link, SessionLog& log) {
    detail::require(stage_ == Stage::Measured, "AliceParty: nothing to send");
    const std::uint8_t byte = encode_message(outcome_);
    link.send(byte);
    log.events.push_back({"message_sent", format_hex_byte(byte)});
    stage_ = Stage::Sent;
  }

  Stage stage() const { return stage_; }

 private:
  CounterRng rng_;
  Stage stage_ = Stage::Ready;
  BranchOutcome outcome_{};
};

class BobParty {
 public:
  enum class Stage { Ready, Received, Corrected };

  explicit BobParty(const ProtocolConfig& config) : config_(config) {}

  int receive(ClassicalChannel& link, SessionLog& log) {
    detail::require(stage_ == Stage::Ready, "BobParty: message already received");
    const std::uint8_t byte = link.receive();
    log.events.push_back({"message_received", format_hex_byte(byte)});
    j_ = decode_message(byte).index();
    stage_ = Stage::Received;
    return j_;
  }

  /// F on (2,5), then V_j on (2,5).
  void correct(SharedState& shared, SessionLog& log) {
    detail::require(stage_ == Stage::Received, "BobParty: no message to act on");
    shared.reg.apply(config_.bob_gate.matrix(), {pos::kQ2, pos::kQ5});
    shared.reg.apply(config_.corrections.at(j_).matrix(), {pos::kQ2, pos::kQ5});
    log.events.push_back({"correction_applied", "j=" + std::to_string(j_)});
    stage_ = Stage::Corrected;
  }

  Stage stage() const { return stage_; }
  int correction_index() const { return j_; }

 private:
  const ProtocolConfig& config_;
  Stage stage_ = Stage::Ready;
  int j_ = 0;
};

// ---------------------------------------------------------------------------

inline Register initial_register(const InputState& input, const ChannelSpec& channel,
                                 const ProtocolConfig& config) {
  if (const auto* b = std::get_if<ChannelSpec::PureBell>(&channel.variant())) {
    const StateVector psi = make_bell(b->label).tensor(make_input_state(input)).tensor(config.ancilla.state());
    return Register::pure({psi.amplitudes().begin(), psi.amplitudes().end()});
  }
  return Register::mixed(kron(kron(channel.density().matrix(), make_input_state(input).projector()),
                              config.ancilla.state().projector()));
}

/// One complete session. The pure Bell channel runs on state vectors, any
/// other channel on the 32x32 density operator.
inline SessionLog run_session(const InputState& input, const ChannelSpec& channel,
                              const ProtocolConfig& config, std::uint64_t seed,
                              std::uint64_t session_index = 0) {
  detail::require_complete(config);
  SessionLog log;
  log.rng_seed = seed;
  log.session_index = session_index;
  log.channel = channel.describe();

  SharedState shared{initial_register(input, channel, config)};
  log.events.push_back({"channel_established", log.channel});

  const CounterRng rng(seed, session_index);
  AliceParty alice(rng);
  BobParty bob(config);
  ClassicalChannel link;

  log.outcome = alice.measure(shared, log);
  alice.send(link, log);
  log.message = encode_message(log.outcome);
  log.correction_index = bob.receive(link, log);
  detail::require(link.pending() == 0, "run_session: stray classical message");
  detail::require(log.correction_index == log.outcome.index(),
                  "run_session: correction index disagrees with the sent outcome");
  bob.correct(shared, log);

  log.branch_probability = shared.reg.weight();
  detail::check_forced_probability(log.branch_probability, log.outcome);
  const DensityMatrix out(shared.reg.reduced({pos::kQ2, pos::kQ5}) * cplx(1.0 / log.branch_probability));
  log.fidelity = fidelity_pure(out, make_input_state(input));
  log.events.push_back({"branch_probability", format_number(log.branch_probability)});
  log.events.push_back({"final_fidelity", format_number(log.fidelity)});
  return log;
}

/// Sessions 0..count-1 under one seed, evaluated on `workers` threads.
inline std::vector<SessionLog> run_sessions(const InputState& input, const ChannelSpec& channel,
                                            const ProtocolConfig& config, std::uint64_t seed,
                                            std::size_t count, unsigned workers = 1) {
  return parallel_map<SessionLog>(count, workers, [&](std::size_t k) {
    return run_session(input, channel, config, seed, static_cast<std::uint64_t>(k));
  });
}

}  // namespace qtele
