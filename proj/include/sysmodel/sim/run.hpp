#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "sysmodel/core/system_model.hpp"
#include "sysmodel/sim/trace.hpp"

namespace sysmodel::sim {

/// External stimulus: at the start of `round`, the environment sends
/// `selector(args)` to the object named `receiver`.
struct Stimulus {
    int round = 0;
    std::string receiver;
    std::string selector;
    std::vector<Value> args;
};

struct SeededRandom {
    std::uint64_t seed = 0;
};
struct RoundRobin {};
struct ExhaustiveEnumeration {
    std::size_t cap = 10000;
};

/// Same seed, same run: SeededRandom draws uniformly over the nonempty
/// (receiver, sender-queue) pairs and over the enabled reactions.
using SchedulerPolicy = std::variant<SeededRandom, RoundRobin, ExhaustiveEnumeration>;

/// Per-pair FIFO buffers of the communication medium: order between two
/// particular objects is preserved; nothing is lost, duplicated or
/// altered in transit.
struct MediumState {
    std::map<ObjectId, std::map<ObjectId, std::deque<Message>>> buffers;

    bool empty() const;
    void enqueue(const Message& m);
    /// Sorted (receiver, sender) pairs with a pending message.
    std::vector<std::pair<ObjectId, ObjectId>> nonempty_pairs() const;
};

/// In-flight state of one bounded run; a plain value, so branching
/// exploration just copies it.
struct RunState {
    std::shared_ptr<const SystemModel> model;
    MediumState medium;
    std::map<ObjectId, ObjectState> live;
    std::size_t tick_count = 0;
    RunTrace trace;
    std::uint64_t rng_seed = 0;
    std::mt19937_64 rng;
    std::size_t delivery_count = 0;
    SchedulerPolicy policy;
    std::vector<Stimulus> stimuli;
};

/// One possible resolution of a round: either the quiescent tick or the
/// delivery of the head of the (receiver, sender) queue, taking the
/// `branch`-th enabled reaction.
struct StepChoice {
    bool quiescent = true;
    ObjectId receiver;
    ObjectId sender;
    std::size_t branch = 0;
};

struct StepEvent {
    bool quiescent = false;
    bool created = false;
    ObjectId receiver;
    ObjectId sender;
    std::optional<Message> delivered;
    std::vector<Message> outputs;
};

/// Initial run state: initial objects live in their declared states, the
/// medium empty, round-0 stimuli injected. Throws InvalidStimulus when a
/// stimulus receiver is neither an initial object nor creatable by env.
RunState init_run(std::shared_ptr<const SystemModel> model,
                  std::vector<Stimulus> stimuli, SchedulerPolicy policy);

/// Every possible StepChoice for the current round, in canonical order.
std::vector<StepChoice> step_options(const RunState& rs);

/// Executes one round under the given choice: delivers at most one
/// message, creates the receiver when its id belongs to the sender's
/// creatable pool, enqueues the reaction's outputs and closes the round
/// with a tick on every stream.
std::pair<RunState, StepEvent> step_with(const RunState& rs, const StepChoice& choice);

/// Policy-driven round; SeededRandom and RoundRobin only.
std::pair<RunState, StepEvent> step(const RunState& rs);

/// Executes `rounds` rounds and returns the finished trace. Deterministic
/// for SeededRandom and RoundRobin.
RunTrace run(std::shared_ptr<const SystemModel> model, std::vector<Stimulus> stimuli,
             std::size_t rounds, SchedulerPolicy policy);

/// All distinct bounded traces, keyed by canonical text. `truncated` is
/// set when the exploration hit the node cap before finishing.
struct RunSet {
    std::map<std::string, RunTrace> traces;
    bool truncated = false;

    std::set<std::string> observable() const;
};

RunSet enumerate_runs(std::shared_ptr<const SystemModel> model,
                      std::vector<Stimulus> stimuli, std::size_t rounds,
                      std::size_t cap);

}  // namespace sysmodel::sim
