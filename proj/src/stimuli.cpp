#include "sysmodel/sim/stimuli.hpp"

#include <cctype>
#include <sstream>

#include "sysmodel/core/errors.hpp"

namespace sysmodel::sim {

namespace {

struct LineParser {
    std::string_view line;
    std::size_t pos = 0;
    int lineno;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("stimuli line " + std::to_string(lineno) + ": " + msg);
    }

    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }

    bool eat(std::string_view token) {
        skip_ws();
        if (line.substr(pos, token.size()) != token) return false;
        pos += token.size();
        return true;
    }

    void expect(std::string_view token) {
        if (!eat(token)) fail("expected '" + std::string(token) + "'");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < line.size() &&
               (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected an identifier");
        return std::string(line.substr(start, pos - start));
    }

    std::int64_t integer() {
        skip_ws();
        bool neg = pos < line.size() && line[pos] == '-';
        if (neg) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos])))
            ++pos;
        if (pos == start) fail("expected a number");
        std::int64_t v = std::stoll(std::string(line.substr(start, pos - start)));
        return neg ? -v : v;
    }

    Value literal() {
        skip_ws();
        if (pos >= line.size()) fail("expected a literal");
        char c = line[pos];
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return Value{integer()};
        if (c == '@') {
            ++pos;
            std::string name = ident();
            if (name == "null") return Value{RefValue{}};
            return Value{RefValue{name}};
        }
        if (c == '"') {
            ++pos;
            std::string s;
            while (true) {
                if (pos >= line.size()) fail("unterminated string literal");
                char d = line[pos++];
                if (d == '"') break;
                if (d == '\\') {
                    if (pos >= line.size()) fail("unterminated escape");
                    char e = line[pos++];
                    switch (e) {
                        case 'n': s += '\n'; break;
                        case 't': s += '\t'; break;
                        case '"': s += '"'; break;
                        case '\\': s += '\\'; break;
                        default: fail("unknown escape");
                    }
                } else {
                    s += d;
                }
            }
            return Value{s};
        }
        std::string word = ident();
        if (word == "true") return Value{true};
        if (word == "false") return Value{false};
        fail("expected a literal, found '" + word + "'");
    }

    bool done() {
        skip_ws();
        return pos >= line.size();
    }
};

}  // namespace

std::vector<Stimulus> parse_stimuli(std::string_view text) {
    std::vector<Stimulus> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = raw;
        // strip comments
        if (auto c = line.find("//"); c != std::string_view::npos)
            line = line.substr(0, c);
        LineParser p{line, 0, lineno};
        if (p.done()) continue;

        Stimulus s;
        p.expect("round");
        s.round = static_cast<int>(p.integer());
        p.expect(":");
        p.expect("env");
        p.expect("->");
        s.receiver = p.ident();
        p.expect(".");
        s.selector = p.ident();
        p.expect("(");
        p.skip_ws();
        if (!p.eat(")")) {
            do {
                s.args.push_back(p.literal());
            } while (p.eat(","));
            p.expect(")");
        }
        if (!p.done()) p.fail("trailing input");
        out.push_back(std::move(s));
    }
    return out;
}

std::string render_stimulus(const Stimulus& s) {
    std::ostringstream out;
    out << "round " << s.round << ": env -> " << s.receiver << " . " << s.selector
        << '(';
    for (std::size_t i = 0; i < s.args.size(); ++i) {
        if (i) out << ", ";
        out << render_value(s.args[i]);
    }
    out << ')';
    return out.str();
}

}  // namespace sysmodel::sim
