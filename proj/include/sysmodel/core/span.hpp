#pragma once

namespace sysmodel {

/// Source location range, 1-based lines and columns. A default span
/// (all zeros) marks programmatically built values with no source.
struct Span {
    int line = 0;
    int col = 0;
    int end_line = 0;
    int end_col = 0;

    bool valid() const { return line > 0; }
    auto operator<=>(const Span&) const = default;
};

}  // namespace sysmodel
