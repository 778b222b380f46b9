#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace sysmodel {

/// Marks the end of one global round in a timed stream.
struct Tick {
    auto operator<=>(const Tick&) const = default;
};

/// Finite prefix of a timed stream: items interleaved with round ticks.
/// Within one run all streams carry the same number of ticks.
template <typename T>
class TimedSeq {
public:
    using Event = std::variant<T, Tick>;

    void push(T item) { events_.push_back(std::move(item)); }
    void tick() {
        events_.push_back(Tick{});
        ++ticks_;
    }

    std::size_t tick_count() const { return ticks_; }
    const std::vector<Event>& events() const { return events_; }
    bool empty() const { return events_.empty(); }

    /// Items grouped per round. Produces tick_count() groups plus one
    /// trailing group if items follow the last tick.
    std::vector<std::vector<T>> rounds() const {
        std::vector<std::vector<T>> out(1);
        for (const auto& e : events_) {
            if (std::holds_alternative<Tick>(e)) {
                out.emplace_back();
            } else {
                out.back().push_back(std::get<T>(e));
            }
        }
        if (out.back().empty()) out.pop_back();
        return out;
    }

    /// All items in order, ticks dropped.
    std::vector<T> items() const {
        std::vector<T> out;
        for (const auto& e : events_)
            if (auto* item = std::get_if<T>(&e)) out.push_back(*item);
        return out;
    }

    bool operator==(const TimedSeq& other) const = default;

private:
    std::vector<Event> events_;
    std::size_t ticks_ = 0;
};

}  // namespace sysmodel
