#pragma once

#include <map>
#include <string>

#include "sysmodel/core/automaton.hpp"
#include "sysmodel/core/message.hpp"
#include "sysmodel/core/stream.hpp"

namespace sysmodel::sim {

/// The completed triple of a system run: per object the timed streams of
/// received messages, emitted messages and passed-through states. All
/// streams of one run carry the same number of ticks.
struct RunTrace {
    std::map<ObjectId, TimedSeq<Message>> input;
    std::map<ObjectId, TimedSeq<Message>> output;
    std::map<ObjectId, TimedSeq<ObjectState>> state;

    std::size_t rounds() const;
    bool operator==(const RunTrace&) const = default;
};

/// Canonical line format, one event per line:
///   round=<n> obj=<id> in=<msg>
///   round=<n> obj=<id> state=<ctrl>,{<bindings>}
///   round=<n> obj=<id> out=<msg>
///   round=<n> obj=<id> tick
/// Within a round: in lines, then state, then out, then one tick line per
/// tracked object; each group sorted by object name with per-object event
/// order preserved.
std::string canonical_trace_text(const RunTrace& trace);

/// Observable projection: the canonical text without state lines. Trace
/// set comparisons (refinement, consistency) work on this projection, so
/// renaming or splitting control states does not break inclusion.
std::string observable_trace_text(const RunTrace& trace);

/// Drops state lines from a canonical trace text.
std::string observable_projection(const std::string& canonical_text);

}  // namespace sysmodel::sim
