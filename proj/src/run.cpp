#include "sysmodel/sim/run.hpp"

#include <algorithm>
#include <functional>

#include "sysmodel/core/errors.hpp"

namespace sysmodel::sim {

bool MediumState::empty() const {
    for (const auto& [receiver, per_sender] : buffers)
        for (const auto& [sender, queue] : per_sender)
            if (!queue.empty()) return false;
    return true;
}

void MediumState::enqueue(const Message& m) {
    buffers[m.receiver][m.sender].push_back(m);
}

std::vector<std::pair<ObjectId, ObjectId>> MediumState::nonempty_pairs() const {
    std::vector<std::pair<ObjectId, ObjectId>> out;
    for (const auto& [receiver, per_sender] : buffers)
        for (const auto& [sender, queue] : per_sender)
            if (!queue.empty()) out.emplace_back(receiver, sender);
    return out;  // map iteration is already sorted
}

namespace {

ObjectId resolve_receiver(const SystemModel& model, const std::string& name) {
    if (name == "env") return ObjectId::env();
    if (auto id = model.find_object(name)) return *id;
    return ObjectId{name, ""};
}

void ensure_streams(RunState& rs, const ObjectId& id) {
    if (rs.trace.input.count(id)) return;
    TimedSeq<Message> backfill;
    for (std::size_t i = 0; i < rs.tick_count; ++i) backfill.tick();
    rs.trace.input[id] = backfill;
    rs.trace.output[id] = backfill;
    if (!id.is_env()) {
        TimedSeq<ObjectState> states;
        for (std::size_t i = 0; i < rs.tick_count; ++i) states.tick();
        rs.trace.state[id] = std::move(states);
    }
}

void inject_stimuli(RunState& rs) {
    for (const auto& s : rs.stimuli) {
        if (static_cast<std::size_t>(s.round) != rs.tick_count) continue;
        Message m;
        m.sender = ObjectId::env();
        m.receiver = resolve_receiver(*rs.model, s.receiver);
        m.selector = s.selector;
        m.args = s.args;
        m.tag = MsgTag::Call;
        rs.trace.output[ObjectId::env()].push(m);
        rs.medium.enqueue(m);
    }
}

void close_round(RunState& rs) {
    for (auto& [id, stream] : rs.trace.input) stream.tick();
    for (auto& [id, stream] : rs.trace.output) stream.tick();
    for (auto& [id, stream] : rs.trace.state) stream.tick();
    ++rs.tick_count;
    inject_stimuli(rs);
}

/// Reactions available to the head message of the (receiver, sender)
/// queue; one entry means the round is deterministic given the pair.
std::size_t branch_count(const RunState& rs, const ObjectId& receiver,
                         const ObjectId& sender) {
    if (receiver.is_env()) return 1;
    const Message& m = rs.medium.buffers.at(receiver).at(sender).front();

    const ObjectState* state = nullptr;
    ObjectState fresh;
    auto it = rs.live.find(receiver);
    if (it != rs.live.end()) {
        state = &it->second;
    } else {
        auto creator = rs.model->creator_of(receiver);
        if (!creator || *creator != sender) return 1;  // delivery will fault
        fresh = rs.model->fresh_state(receiver.cls);
        state = &fresh;
    }
    bool ok;
    try {
        ok = accepts(receiver, m, *rs.model);
    } catch (const UnknownObject&) {
        return 1;
    }
    if (!ok) return 1;  // unaccepted messages are consumed without effect
    auto steps = enabled_steps(rs.model->automata.at(receiver.cls), *state, m);
    return steps.empty() ? 1 : steps.size();
}

}  // namespace

RunState init_run(std::shared_ptr<const SystemModel> model,
                  std::vector<Stimulus> stimuli, SchedulerPolicy policy) {
    RunState rs;
    rs.model = std::move(model);
    rs.policy = policy;
    if (auto* seeded = std::get_if<SeededRandom>(&policy)) {
        rs.rng_seed = seeded->seed;
        rs.rng.seed(seeded->seed);
    }

    for (const auto& s : stimuli) {
        if (s.round < 0)
            throw InvalidStimulus("stimulus round " + std::to_string(s.round) +
                                  " is negative");
        auto id = rs.model->find_object(s.receiver);
        if (!id)
            throw InvalidStimulus("stimulus receiver " + s.receiver +
                                  " is not an object of the model");
        if (!rs.model->is_initial(*id)) {
            auto creator = rs.model->creator_of(*id);
            if (!creator || !creator->is_env())
                throw InvalidStimulus("stimulus receiver " + s.receiver +
                                      " is neither initial nor creatable by env");
        }
    }
    std::stable_sort(stimuli.begin(), stimuli.end(),
                     [](const Stimulus& a, const Stimulus& b) { return a.round < b.round; });
    rs.stimuli = std::move(stimuli);

    ensure_streams(rs, ObjectId::env());
    for (const auto& [id, state] : rs.model->initial_objects) {
        rs.live[id] = state;
        ensure_streams(rs, id);
        rs.trace.state[id].push(state);
    }
    inject_stimuli(rs);
    return rs;
}

std::vector<StepChoice> step_options(const RunState& rs) {
    std::vector<StepChoice> out;
    for (const auto& [receiver, sender] : rs.medium.nonempty_pairs()) {
        std::size_t branches = branch_count(rs, receiver, sender);
        for (std::size_t b = 0; b < branches; ++b)
            out.push_back(StepChoice{false, receiver, sender, b});
    }
    if (out.empty()) out.push_back(StepChoice{});
    return out;
}

std::pair<RunState, StepEvent> step_with(const RunState& prev, const StepChoice& choice) {
    RunState rs = prev;
    StepEvent ev;

    if (choice.quiescent) {
        ev.quiescent = true;
        close_round(rs);
        return {std::move(rs), std::move(ev)};
    }

    auto& queue = rs.medium.buffers.at(choice.receiver).at(choice.sender);
    Message m = queue.front();
    queue.pop_front();

    ev.receiver = choice.receiver;
    ev.sender = choice.sender;
    ev.delivered = m;

    ensure_streams(rs, choice.receiver);
    rs.trace.input[choice.receiver].push(m);

    if (!choice.receiver.is_env()) {
        auto it = rs.live.find(choice.receiver);
        if (it == rs.live.end()) {
            auto creator = rs.model->creator_of(choice.receiver);
            if (!creator || *creator != choice.sender)
                throw CreationViolation("object " + choice.receiver.name +
                                        " is not live and not creatable by " +
                                        choice.sender.name);
            // Creation is just the first message transmission: the object
            // comes to life in its automaton's first initial state.
            ObjectState fresh = rs.model->fresh_state(choice.receiver.cls);
            it = rs.live.emplace(choice.receiver, std::move(fresh)).first;
            ev.created = true;
            rs.trace.state[choice.receiver].push(it->second);
        }

        bool ok = accepts(choice.receiver, m, *rs.model);
        std::vector<Step> steps;
        if (ok)
            steps = enabled_steps(rs.model->automata.at(choice.receiver.cls),
                                  it->second, m);
        if (!steps.empty()) {
            const Step& s = steps[std::min(choice.branch, steps.size() - 1)];
            it->second = s.state;
            for (const Message& raw : s.outputs) {
                Message out = raw;
                out.receiver = resolve_receiver(*rs.model, raw.receiver.name);
                ev.outputs.push_back(out);
                rs.trace.output[choice.receiver].push(out);
                rs.medium.enqueue(out);
            }
        }
        // An accepted message with no enabled transition (or an unaccepted
        // one) is consumed with no effect.
        rs.trace.state[choice.receiver].push(it->second);
    }

    ++rs.delivery_count;
    close_round(rs);
    return {std::move(rs), std::move(ev)};
}

std::pair<RunState, StepEvent> step(const RunState& rs) {
    if (std::holds_alternative<ExhaustiveEnumeration>(rs.policy))
        throw std::invalid_argument("exhaustive policy requires enumerate_runs");

    auto pairs = rs.medium.nonempty_pairs();
    if (pairs.empty()) return step_with(rs, StepChoice{});

    RunState pick = rs;  // the RNG advances as part of the produced state
    StepChoice choice;
    choice.quiescent = false;
    if (std::holds_alternative<RoundRobin>(rs.policy)) {
        auto [receiver, sender] = pairs[rs.delivery_count % pairs.size()];
        choice.receiver = receiver;
        choice.sender = sender;
        choice.branch = 0;
        return step_with(pick, choice);
    }
    auto [receiver, sender] = pairs[pick.rng() % pairs.size()];
    choice.receiver = receiver;
    choice.sender = sender;
    std::size_t branches = branch_count(pick, receiver, sender);
    choice.branch = branches > 1 ? pick.rng() % branches : 0;
    return step_with(pick, choice);
}

RunTrace run(std::shared_ptr<const SystemModel> model, std::vector<Stimulus> stimuli,
             std::size_t rounds, SchedulerPolicy policy) {
    if (rounds < 1) throw std::invalid_argument("run needs at least one round");
    RunState rs = init_run(std::move(model), std::move(stimuli), policy);
    for (std::size_t r = 0; r < rounds; ++r) {
        auto [next, ev] = step(rs);
        rs = std::move(next);
    }
    return rs.trace;
}

std::set<std::string> RunSet::observable() const {
    std::set<std::string> out;
    for (const auto& [text, trace] : traces) out.insert(observable_projection(text));
    return out;
}

RunSet enumerate_runs(std::shared_ptr<const SystemModel> model,
                      std::vector<Stimulus> stimuli, std::size_t rounds,
                      std::size_t cap) {
    if (cap == 0) throw std::invalid_argument("enumeration cap must be positive");
    RunSet out;
    std::size_t nodes = 0;

    std::function<void(const RunState&, std::size_t)> dfs = [&](const RunState& rs,
                                                                std::size_t depth) {
        if (depth == rounds) {
            out.traces.emplace(canonical_trace_text(rs.trace), rs.trace);
            return;
        }
        for (const StepChoice& choice : step_options(rs)) {
            if (out.truncated) return;
            if (++nodes > cap) {
                out.truncated = true;
                return;
            }
            auto [next, ev] = step_with(rs, choice);
            dfs(next, depth + 1);
        }
    };

    RunState init = init_run(std::move(model), std::move(stimuli),
                             ExhaustiveEnumeration{cap});
    dfs(init, 0);
    return out;
}

}  // namespace sysmodel::sim
