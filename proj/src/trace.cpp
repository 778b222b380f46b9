#include "sysmodel/sim/trace.hpp"

#include <sstream>

namespace sysmodel::sim {

std::size_t RunTrace::rounds() const {
    for (const auto& [id, s] : input) return s.tick_count();
    for (const auto& [id, s] : output) return s.tick_count();
    return 0;
}

namespace {

template <typename T, typename Render>
void emit_group(std::ostream& out, std::size_t round,
                const std::map<ObjectId, TimedSeq<T>>& streams, const char* label,
                Render render) {
    for (const auto& [id, stream] : streams) {
        auto per_round = stream.rounds();
        if (round >= per_round.size()) continue;
        for (const auto& item : per_round[round])
            out << "round=" << round << " obj=" << id.name << ' ' << label << '='
                << render(item) << '\n';
    }
}

}  // namespace

std::string canonical_trace_text(const RunTrace& trace) {
    std::ostringstream out;
    const std::size_t rounds = trace.rounds();
    for (std::size_t r = 0; r < rounds; ++r) {
        emit_group(out, r, trace.input, "in", render_message);
        emit_group(out, r, trace.state, "state", render_object_state);
        emit_group(out, r, trace.output, "out", render_message);
        // One tick per tracked object; streams of one object tick together.
        std::set<std::string> names;
        for (const auto& [id, s] : trace.input) names.insert(id.name);
        for (const auto& [id, s] : trace.output) names.insert(id.name);
        for (const auto& [id, s] : trace.state) names.insert(id.name);
        for (const auto& name : names)
            out << "round=" << r << " obj=" << name << " tick\n";
    }
    return out.str();
}

std::string observable_trace_text(const RunTrace& trace) {
    return observable_projection(canonical_trace_text(trace));
}

std::string observable_projection(const std::string& canonical_text) {
    std::istringstream in(canonical_text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find(" state=") != std::string::npos) continue;
        out << line << '\n';
    }
    return out.str();
}

}  // namespace sysmodel::sim
