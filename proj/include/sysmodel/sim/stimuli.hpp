#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sysmodel/sim/run.hpp"

namespace sysmodel::sim {

/// Parses a stimuli file. One stimulus per line:
///   round <n>: env -> <receiver> . <selector>(<literals>)
/// Blank lines and // comments are allowed. Throws Error with the line
/// number on malformed input.
std::vector<Stimulus> parse_stimuli(std::string_view text);

std::string render_stimulus(const Stimulus& s);

}  // namespace sysmodel::sim
