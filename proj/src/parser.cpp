#include "sysmodel/dsl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace sysmodel::dsl {

const ClassDiagramBody& Document::as_class_diagram() const {
    return std::get<ClassDiagramBody>(body);
}
const ObjectDiagramBody& Document::as_object_diagram() const {
    return std::get<ObjectDiagramBody>(body);
}
const StateDiagramBody& Document::as_state_diagram() const {
    return std::get<StateDiagramBody>(body);
}
const SequenceDiagramBody& Document::as_sequence_diagram() const {
    return std::get<SequenceDiagramBody>(body);
}
const TextBody& Document::as_text() const { return std::get<TextBody>(body); }

const ClassDecl* ClassDiagramBody::find_class(const std::string& name) const {
    for (const auto& c : classes)
        if (c.name == name) return &c;
    return nullptr;
}

const AssocDecl* ClassDiagramBody::find_assoc(const std::string& name) const {
    for (const auto& a : assocs)
        if (a.name == name) return &a;
    return nullptr;
}

const LifelineDecl* SequenceDiagramBody::find_lifeline(const std::string& role) const {
    for (const auto& l : lifelines)
        if (l.role == role) return &l;
    return nullptr;
}

std::vector<const EventDecl*> SequenceDiagramBody::events() const {
    std::vector<const EventDecl*> out;
    for (const auto& s : steps)
        if (auto* e = std::get_if<EventDecl>(&s)) out.push_back(e);
    return out;
}

std::string kind_name(DocKind k) {
    switch (k) {
        case DocKind::ClassDiagram: return "ClassDiagram";
        case DocKind::ObjectDiagram: return "ObjectDiagram";
        case DocKind::StateDiagram: return "StateDiagram";
        case DocKind::SequenceDiagram: return "SequenceDiagram";
        case DocKind::Text: return "Text";
    }
    return "?";
}

DocKind kind_from_extension(const std::string& ext) {
    if (ext == "cd") return DocKind::ClassDiagram;
    if (ext == "od") return DocKind::ObjectDiagram;
    if (ext == "sd") return DocKind::StateDiagram;
    if (ext == "qd") return DocKind::SequenceDiagram;
    if (ext == "txt") return DocKind::Text;
    throw UnknownKind(ext);
}

std::string extension_of(DocKind k) {
    switch (k) {
        case DocKind::ClassDiagram: return "cd";
        case DocKind::ObjectDiagram: return "od";
        case DocKind::StateDiagram: return "sd";
        case DocKind::SequenceDiagram: return "qd";
        case DocKind::Text: return "txt";
    }
    return "txt";
}

namespace {

enum class Tok {
    Ident, Keyword, Int, String,
    LBrace, RBrace, LParen, RParen,
    Colon, Comma, Semi, Arrow, Assign,
    Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star, Slash, At, Dot,
    Newline, End
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

const std::set<std::string> kKeywords = {
    "class", "extends", "attr", "method", "invariant", "assoc",
    "statemachine", "states", "initial", "trans", "on", "if", "emit", "to",
    "sequence", "objects", "link", "state", "creatable", "by",
    "and", "or", "not", "div", "true", "false", "null",
    "Int", "Bool", "String", "ObjectRef",
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_blanks();
            Token t = next();
            out.push_back(t);
            if (t.kind == Tok::End) break;
        }
        return out;
    }

private:
    void skip_blanks() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        if (pos_ >= src_.size()) return {Tok::End, "", line_, col_};
        Token t;
        t.line = line_;
        t.col = col_;
        char c = src_[pos_];
        if (c == '\n') {
            advance();
            t.kind = Tok::Newline;
            t.text = "\n";
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_')) {
                word += src_[pos_];
                advance();
            }
            t.kind = kKeywords.count(word) ? Tok::Keyword : Tok::Ident;
            t.text = word;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                num += src_[pos_];
                advance();
            }
            t.kind = Tok::Int;
            t.text = num;
            return t;
        }
        if (c == '"') {
            advance();
            std::string s;
            while (true) {
                if (pos_ >= src_.size() || src_[pos_] == '\n')
                    throw SyntaxError("unterminated string literal", t.line, t.col,
                                      {"\""});
                char d = src_[pos_];
                advance();
                if (d == '"') break;
                if (d == '\\') {
                    if (pos_ >= src_.size())
                        throw SyntaxError("unterminated escape", line_, col_, {});
                    char e = src_[pos_];
                    advance();
                    switch (e) {
                        case 'n': s += '\n'; break;
                        case 't': s += '\t'; break;
                        case '"': s += '"'; break;
                        case '\\': s += '\\'; break;
                        default:
                            throw SyntaxError("unknown escape '\\" + std::string(1, e) +
                                                  "'",
                                              line_, col_ - 2, {});
                    }
                } else {
                    s += d;
                }
            }
            t.kind = Tok::String;
            t.text = s;
            return t;
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        if (two('-', '>')) { advance(); advance(); t.kind = Tok::Arrow; t.text = "->"; return t; }
        if (two('=', '=')) { advance(); advance(); t.kind = Tok::Eq; t.text = "=="; return t; }
        if (two('!', '=')) { advance(); advance(); t.kind = Tok::Ne; t.text = "!="; return t; }
        if (two('<', '=')) { advance(); advance(); t.kind = Tok::Le; t.text = "<="; return t; }
        if (two('>', '=')) { advance(); advance(); t.kind = Tok::Ge; t.text = ">="; return t; }
        advance();
        switch (c) {
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case ':': t.kind = Tok::Colon; break;
            case ',': t.kind = Tok::Comma; break;
            case ';': t.kind = Tok::Semi; break;
            case '=': t.kind = Tok::Assign; break;
            case '<': t.kind = Tok::Lt; break;
            case '>': t.kind = Tok::Gt; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '/': t.kind = Tok::Slash; break;
            case '@': t.kind = Tok::At; break;
            case '.': t.kind = Tok::Dot; break;
            default:
                throw SyntaxError("unexpected character '" + std::string(1, c) + "'",
                                  t.line, t.col, {});
        }
        t.text = std::string(1, c);
        return t;
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::string_view src, std::string doc_id)
        : tokens_(Lexer(src).run()), doc_id_(std::move(doc_id)) {}

    Document parse_document(DocKind kind, std::string_view src) {
        Document d;
        d.id = doc_id_;
        d.kind = kind;
        d.source = std::string(src);
        switch (kind) {
            case DocKind::ClassDiagram: d.body = parse_class_diagram(); break;
            case DocKind::ObjectDiagram: d.body = parse_object_diagram(); break;
            case DocKind::StateDiagram: d.body = parse_state_diagram(); break;
            case DocKind::SequenceDiagram: d.body = parse_sequence_diagram(); break;
            case DocKind::Text: d.body = TextBody{std::string(src)}; return d;
        }
        return d;
    }

    ExprPtr parse_expression_only() {
        ExprPtr e = parse_expr();
        skip_newlines();
        if (!at(Tok::End)) fail("trailing input after expression", {"end of input"});
        return e;
    }

private:
    // --- token plumbing ---------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }

    Token advance() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

    bool at(Tok k) const { return peek().kind == k; }
    bool at_keyword(const std::string& kw) const {
        return peek().kind == Tok::Keyword && peek().text == kw;
    }

    bool accept(Tok k) {
        if (!at(k)) return false;
        advance();
        return true;
    }

    bool accept_keyword(const std::string& kw) {
        if (!at_keyword(kw)) return false;
        advance();
        return true;
    }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
        const Token& t = peek();
        std::string got = t.kind == Tok::End ? "end of input"
                          : t.kind == Tok::Newline ? "end of line"
                                                   : "'" + t.text + "'";
        throw SyntaxError(msg + ", found " + got, t.line, t.col, std::move(expected));
    }

    Token expect(Tok k, const std::string& what) {
        if (!at(k)) fail("expected " + what, {what});
        return advance();
    }

    Token expect_keyword(const std::string& kw) {
        if (!at_keyword(kw)) fail("expected '" + kw + "'", {kw});
        return advance();
    }

    Token expect_ident(const std::string& what) {
        if (!at(Tok::Ident)) fail("expected " + what, {what});
        return advance();
    }

    void skip_newlines() {
        while (accept(Tok::Newline)) {
        }
    }

    // Statements end at a newline, a ';', or right before '}' / end of input.
    void end_of_stmt() {
        if (accept(Tok::Semi) || accept(Tok::Newline)) {
            skip_newlines();
            return;
        }
        if (at(Tok::RBrace) || at(Tok::End)) return;
        fail("expected end of statement", {"newline", ";"});
    }

    static Span span_from(const Token& t) {
        return {t.line, t.col, t.line, t.col + static_cast<int>(t.text.size())};
    }

    Span span_to_prev(const Token& start) const {
        const Token& prev = tokens_[pos_ > 0 ? pos_ - 1 : 0];
        return {start.line, start.col, prev.line,
                prev.col + static_cast<int>(prev.text.size())};
    }

    ValueType parse_type() {
        if (accept_keyword("Int")) return ValueType::Int;
        if (accept_keyword("Bool")) return ValueType::Bool;
        if (accept_keyword("String")) return ValueType::String;
        if (accept_keyword("ObjectRef")) return ValueType::ObjectRef;
        fail("expected a type", {"Int", "Bool", "String", "ObjectRef"});
    }

    Value parse_literal() {
        if (accept(Tok::Minus)) {
            Token n = expect(Tok::Int, "integer literal");
            return Value{-std::stoll(n.text)};
        }
        if (at(Tok::Int)) return Value{std::stoll(advance().text)};
        if (at(Tok::String)) return Value{advance().text};
        if (accept_keyword("true")) return Value{true};
        if (accept_keyword("false")) return Value{false};
        if (accept(Tok::At)) {
            if (accept_keyword("null")) return Value{RefValue{}};
            Token name = expect_ident("object name after '@'");
            return Value{RefValue{name.text}};
        }
        fail("expected a literal", {"integer", "string", "true", "false", "@ref"});
    }

    // --- expressions --------------------------------------------------------

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (at_keyword("or")) {
            Token op = advance();
            lhs = make_binary(BinaryOp::Or, lhs, parse_and(), span_from(op));
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_not();
        while (at_keyword("and")) {
            Token op = advance();
            lhs = make_binary(BinaryOp::And, lhs, parse_not(), span_from(op));
        }
        return lhs;
    }

    ExprPtr parse_not() {
        if (at_keyword("not")) {
            Token op = advance();
            return make_unary(UnaryOp::Not, parse_not(), span_from(op));
        }
        return parse_cmp();
    }

    ExprPtr parse_cmp() {
        ExprPtr lhs = parse_add();
        BinaryOp op;
        switch (peek().kind) {
            case Tok::Eq: op = BinaryOp::Eq; break;
            case Tok::Ne: op = BinaryOp::Ne; break;
            case Tok::Lt: op = BinaryOp::Lt; break;
            case Tok::Le: op = BinaryOp::Le; break;
            case Tok::Gt: op = BinaryOp::Gt; break;
            case Tok::Ge: op = BinaryOp::Ge; break;
            default: return lhs;
        }
        Token t = advance();
        return make_binary(op, lhs, parse_add(), span_from(t));
    }

    ExprPtr parse_add() {
        ExprPtr lhs = parse_mul();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            Token op = advance();
            BinaryOp b = op.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
            lhs = make_binary(b, lhs, parse_mul(), span_from(op));
        }
        return lhs;
    }

    ExprPtr parse_mul() {
        ExprPtr lhs = parse_unary();
        while (at(Tok::Star) || at_keyword("div")) {
            Token op = advance();
            BinaryOp b = op.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
            lhs = make_binary(b, lhs, parse_unary(), span_from(op));
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (at(Tok::Minus)) {
            Token op = advance();
            ExprPtr operand = parse_unary();
            // Fold a negated integer literal so `-5` round-trips as one node.
            if (auto* lit = std::get_if<Literal>(&operand->node))
                if (auto* n = std::get_if<std::int64_t>(&lit->value))
                    return make_literal(Value{-*n}, span_from(op));
            return make_unary(UnaryOp::Neg, std::move(operand), span_from(op));
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int:
                return make_literal(Value{std::stoll(advance().text)}, span_from(t));
            case Tok::String:
                return make_literal(Value{advance().text}, span_from(t));
            case Tok::Ident:
                return make_var(advance().text, span_from(t));
            case Tok::At: {
                advance();
                if (accept_keyword("null"))
                    return make_literal(Value{RefValue{}}, span_from(t));
                Token name = expect_ident("object name after '@'");
                return make_literal(Value{RefValue{name.text}}, span_from(t));
            }
            case Tok::LParen: {
                advance();
                ExprPtr e = parse_expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Keyword:
                if (t.text == "true")
                    return make_literal(Value{true}, span_from(advance()));
                if (t.text == "false")
                    return make_literal(Value{false}, span_from(advance()));
                break;
            default: break;
        }
        fail("expected an expression", {"literal", "identifier", "("});
    }

    // --- class diagram ------------------------------------------------------

    ClassDiagramBody parse_class_diagram() {
        ClassDiagramBody body;
        skip_newlines();
        while (!at(Tok::End)) {
            if (at_keyword("class")) {
                ClassDecl c = parse_class_decl();
                if (body.find_class(c.name))
                    throw DuplicateName(c.name, c.span.line, c.span.col);
                body.classes.push_back(std::move(c));
            } else if (at_keyword("assoc")) {
                AssocDecl a = parse_assoc_decl();
                if (body.find_assoc(a.name))
                    throw DuplicateName(a.name, a.span.line, a.span.col);
                body.assocs.push_back(std::move(a));
            } else {
                fail("expected a declaration", {"class", "assoc"});
            }
            skip_newlines();
        }
        return body;
    }

    ClassDecl parse_class_decl() {
        Token start = expect_keyword("class");
        ClassDecl c;
        c.name = expect_ident("class name").text;
        if (accept_keyword("extends")) c.parent = expect_ident("parent class").text;
        expect(Tok::LBrace, "'{'");
        skip_newlines();
        while (!at(Tok::RBrace)) {
            if (at_keyword("attr")) {
                Token kw = advance();
                AttrDecl a;
                Token name = expect_ident("attribute name");
                a.name = name.text;
                expect(Tok::Colon, "':'");
                a.type = parse_type();
                a.span = span_to_prev(kw);
                for (const auto& prev : c.attrs)
                    if (prev.name == a.name)
                        throw DuplicateName(a.name, name.line, name.col);
                c.attrs.push_back(std::move(a));
            } else if (at_keyword("method")) {
                Token kw = advance();
                MethodDecl m;
                Token name = expect_ident("method name");
                m.name = name.text;
                expect(Tok::LParen, "'('");
                if (!at(Tok::RParen)) {
                    do {
                        Param p;
                        p.name = expect_ident("parameter name").text;
                        expect(Tok::Colon, "':'");
                        p.type = parse_type();
                        for (const auto& prev : m.params)
                            if (prev.name == p.name)
                                throw DuplicateName(p.name, peek().line, peek().col);
                        m.params.push_back(std::move(p));
                    } while (accept(Tok::Comma));
                }
                expect(Tok::RParen, "')'");
                expect(Tok::Colon, "':'");
                m.result = parse_type();
                m.span = span_to_prev(kw);
                for (const auto& prev : c.methods)
                    if (prev.name == m.name)
                        throw DuplicateName(m.name, name.line, name.col);
                c.methods.push_back(std::move(m));
            } else if (at_keyword("invariant")) {
                Token kw = advance();
                InvariantDecl inv;
                inv.expr = parse_expr();
                inv.span = span_to_prev(kw);
                c.invariants.push_back(std::move(inv));
            } else {
                fail("expected a class member", {"attr", "method", "invariant", "}"});
            }
            end_of_stmt();
        }
        expect(Tok::RBrace, "'}'");
        c.span = span_to_prev(start);
        end_of_stmt();
        return c;
    }

    AssocDecl parse_assoc_decl() {
        Token start = expect_keyword("assoc");
        AssocDecl a;
        a.name = expect_ident("association name").text;
        expect(Tok::Colon, "':'");
        a.source = expect_ident("source class").text;
        expect(Tok::Arrow, "'->'");
        a.target = expect_ident("target class").text;
        a.span = span_to_prev(start);
        end_of_stmt();
        return a;
    }

    // --- state diagram ------------------------------------------------------

    StateDiagramBody parse_state_diagram() {
        skip_newlines();
        Token start = expect_keyword("statemachine");
        StateDiagramBody body;
        Automaton& a = body.automaton;
        a.owner_class = expect_ident("class name").text;
        expect(Tok::LBrace, "'{'");
        skip_newlines();

        expect_keyword("states");
        do {
            Token s = expect_ident("state name");
            if (a.has_state(s.text)) throw DuplicateName(s.text, s.line, s.col);
            a.control_states.push_back(s.text);
            body.state_spans[s.text] = span_from(s);
        } while (accept(Tok::Comma));
        end_of_stmt();

        expect_keyword("initial");
        do {
            Token s = expect_ident("initial state name");
            if (!a.has_state(s.text))
                throw SyntaxError("unknown state '" + s.text + "'", s.line, s.col,
                                  {"declared state"});
            if (std::find(a.initial_controls.begin(), a.initial_controls.end(),
                          s.text) != a.initial_controls.end())
                throw DuplicateName(s.text, s.line, s.col);
            a.initial_controls.push_back(s.text);
        } while (accept(Tok::Comma));
        end_of_stmt();

        while (!at(Tok::RBrace)) {
            a.transitions.push_back(parse_transition(a));
            end_of_stmt();
        }
        expect(Tok::RBrace, "'}'");
        skip_newlines();
        if (!at(Tok::End)) fail("expected end of document", {"end of input"});
        body.span = span_to_prev(start);
        return body;
    }

    Transition parse_transition(const Automaton& a) {
        Token start = expect_keyword("trans");
        Transition tr;
        Token src = expect_ident("source state");
        if (!a.has_state(src.text))
            throw SyntaxError("unknown state '" + src.text + "'", src.line, src.col,
                              {"declared state"});
        tr.source = src.text;
        expect(Tok::Arrow, "'->'");
        Token dst = expect_ident("target state");
        if (!a.has_state(dst.text))
            throw SyntaxError("unknown state '" + dst.text + "'", dst.line, dst.col,
                              {"declared state"});
        tr.target = dst.text;
        expect_keyword("on");
        tr.trigger = expect_ident("trigger selector").text;
        expect(Tok::LParen, "'('");
        if (!at(Tok::RParen)) {
            do {
                Token p = expect_ident("parameter name");
                if (std::find(tr.formals.begin(), tr.formals.end(), p.text) !=
                    tr.formals.end())
                    throw DuplicateName(p.text, p.line, p.col);
                tr.formals.push_back(p.text);
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen, "')'");
        if (accept_keyword("if")) tr.guard = parse_expr();
        if (accept(Tok::Slash)) {
            do {
                if (at_keyword("emit")) {
                    Token kw = advance();
                    Emit e;
                    e.selector = expect_ident("selector").text;
                    expect(Tok::LParen, "'('");
                    if (!at(Tok::RParen)) {
                        do {
                            e.args.push_back(parse_expr());
                        } while (accept(Tok::Comma));
                    }
                    expect(Tok::RParen, "')'");
                    expect_keyword("to");
                    e.target = parse_expr();
                    e.span = span_to_prev(kw);
                    tr.actions.emplace_back(std::move(e));
                } else {
                    Token name = expect_ident("attribute name");
                    expect(Tok::Assign, "'='");
                    Assign as;
                    as.attribute = name.text;
                    as.value = parse_expr();
                    as.span = span_to_prev(name);
                    tr.actions.emplace_back(std::move(as));
                }
            } while (accept(Tok::Comma));
        }
        tr.span = span_to_prev(start);
        return tr;
    }

    // --- sequence diagram ---------------------------------------------------

    SequenceDiagramBody parse_sequence_diagram() {
        skip_newlines();
        expect_keyword("sequence");
        SequenceDiagramBody body;
        body.name = expect_ident("sequence name").text;
        expect(Tok::LBrace, "'{'");
        skip_newlines();

        expect_keyword("objects");
        do {
            LifelineDecl l;
            Token role = expect_ident("role name");
            l.role = role.text;
            expect(Tok::Colon, "':'");
            l.cls = expect_ident("class name").text;
            l.span = span_to_prev(role);
            if (body.find_lifeline(l.role) || l.role == "env")
                throw DuplicateName(l.role, role.line, role.col);
            body.lifelines.push_back(std::move(l));
        } while (accept(Tok::Comma));
        end_of_stmt();

        auto check_role = [&](const Token& t) {
            if (t.text != "env" && !body.find_lifeline(t.text))
                throw SyntaxError("unknown role '" + t.text + "'", t.line, t.col,
                                  {"declared role", "env"});
        };

        while (!at(Tok::RBrace)) {
            if (at_keyword("state")) {
                Token kw = advance();
                StateLabelDecl s;
                Token role = expect_ident("role name");
                check_role(role);
                s.role = role.text;
                expect(Tok::Colon, "':'");
                s.label = expect_ident("state label").text;
                s.span = span_to_prev(kw);
                body.steps.emplace_back(std::move(s));
            } else {
                EventDecl e;
                Token from = expect_ident("role name");
                check_role(from);
                e.from = from.text;
                expect(Tok::Arrow, "'->'");
                Token to = expect_ident("role name");
                check_role(to);
                e.to = to.text;
                expect(Tok::Colon, "':'");
                e.selector = expect_ident("selector").text;
                expect(Tok::LParen, "'('");
                if (!at(Tok::RParen)) {
                    do {
                        e.args.push_back(parse_literal());
                    } while (accept(Tok::Comma));
                }
                expect(Tok::RParen, "')'");
                e.span = span_to_prev(from);
                body.steps.emplace_back(std::move(e));
            }
            end_of_stmt();
        }
        expect(Tok::RBrace, "'}'");
        skip_newlines();
        if (!at(Tok::End)) fail("expected end of document", {"end of input"});
        return body;
    }

    // --- object diagram -----------------------------------------------------

    ObjectDiagramBody parse_object_diagram() {
        skip_newlines();
        expect_keyword("objects");
        expect(Tok::LBrace, "'{'");
        skip_newlines();
        ObjectDiagramBody body;

        auto declared = [&](const std::string& name) {
            for (const auto& o : body.objects)
                if (o.name == name) return true;
            for (const auto& c : body.creatables)
                if (c.name == name) return true;
            return false;
        };

        while (!at(Tok::RBrace)) {
            if (at_keyword("link")) {
                Token kw = advance();
                LinkDecl l;
                l.assoc = expect_ident("association name").text;
                Token src = expect_ident("object name");
                if (!declared(src.text))
                    throw SyntaxError("unknown object '" + src.text + "'", src.line,
                                      src.col, {"declared object"});
                l.source = src.text;
                expect(Tok::Arrow, "'->'");
                Token dst = expect_ident("object name");
                if (!declared(dst.text))
                    throw SyntaxError("unknown object '" + dst.text + "'", dst.line,
                                      dst.col, {"declared object"});
                l.target = dst.text;
                l.span = span_to_prev(kw);
                body.links.push_back(std::move(l));
            } else if (at_keyword("creatable")) {
                Token kw = advance();
                CreatableDecl c;
                Token name = expect_ident("object name");
                if (declared(name.text) || name.text == "env")
                    throw DuplicateName(name.text, name.line, name.col);
                c.name = name.text;
                expect(Tok::Colon, "':'");
                c.cls = expect_ident("class name").text;
                expect_keyword("by");
                Token owner = expect_ident("owner object or env");
                if (owner.text != "env" && !declared(owner.text))
                    throw SyntaxError("unknown owner '" + owner.text + "'", owner.line,
                                      owner.col, {"declared object", "env"});
                c.owner = owner.text;
                c.span = span_to_prev(kw);
                body.creatables.push_back(std::move(c));
            } else {
                ObjectDecl o;
                Token name = expect_ident("object name");
                if (declared(name.text) || name.text == "env")
                    throw DuplicateName(name.text, name.line, name.col);
                o.name = name.text;
                expect(Tok::Colon, "':'");
                o.cls = expect_ident("class name").text;
                expect(Tok::LBrace, "'{'");
                skip_newlines();
                if (!at(Tok::RBrace)) {
                    do {
                        skip_newlines();
                        BindingDecl b;
                        Token attr = expect_ident("attribute name");
                        b.attribute = attr.text;
                        for (const auto& prev : o.bindings)
                            if (prev.attribute == b.attribute)
                                throw DuplicateName(b.attribute, attr.line, attr.col);
                        expect(Tok::Assign, "'='");
                        b.value = parse_literal();
                        b.span = span_to_prev(attr);
                        o.bindings.push_back(std::move(b));
                        skip_newlines();
                    } while (accept(Tok::Comma));
                }
                skip_newlines();
                expect(Tok::RBrace, "'}'");
                o.span = span_to_prev(name);
                body.objects.push_back(std::move(o));
            }
            end_of_stmt();
        }
        expect(Tok::RBrace, "'}'");
        skip_newlines();
        if (!at(Tok::End)) fail("expected end of document", {"end of input"});
        return body;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::string doc_id_;
};

}  // namespace

Document parse(DocKind kind, std::string_view text, std::string doc_id) {
    Parser p(text, std::move(doc_id));
    return p.parse_document(kind, text);
}

ExprPtr parse_expr_text(std::string_view text) {
    Parser p(text, "<expr>");
    return p.parse_expression_only();
}

// --- structural equality ---------------------------------------------------

namespace {

bool equal(const ClassDiagramBody& a, const ClassDiagramBody& b) {
    if (a.classes.size() != b.classes.size() || a.assocs.size() != b.assocs.size())
        return false;
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        const auto& ca = a.classes[i];
        const auto& cb = b.classes[i];
        if (ca.name != cb.name || ca.parent != cb.parent) return false;
        if (ca.attrs.size() != cb.attrs.size() ||
            ca.methods.size() != cb.methods.size() ||
            ca.invariants.size() != cb.invariants.size())
            return false;
        for (std::size_t j = 0; j < ca.attrs.size(); ++j)
            if (ca.attrs[j].name != cb.attrs[j].name ||
                ca.attrs[j].type != cb.attrs[j].type)
                return false;
        for (std::size_t j = 0; j < ca.methods.size(); ++j) {
            const auto& ma = ca.methods[j];
            const auto& mb = cb.methods[j];
            if (ma.name != mb.name || ma.result != mb.result ||
                ma.params.size() != mb.params.size())
                return false;
            for (std::size_t k = 0; k < ma.params.size(); ++k)
                if (ma.params[k].name != mb.params[k].name ||
                    ma.params[k].type != mb.params[k].type)
                    return false;
        }
        for (std::size_t j = 0; j < ca.invariants.size(); ++j)
            if (!expr_equal(ca.invariants[j].expr, cb.invariants[j].expr)) return false;
    }
    for (std::size_t i = 0; i < a.assocs.size(); ++i) {
        const auto& xa = a.assocs[i];
        const auto& xb = b.assocs[i];
        if (xa.name != xb.name || xa.source != xb.source || xa.target != xb.target)
            return false;
    }
    return true;
}

bool equal(const ObjectDiagramBody& a, const ObjectDiagramBody& b) {
    if (a.objects.size() != b.objects.size() ||
        a.creatables.size() != b.creatables.size() || a.links.size() != b.links.size())
        return false;
    for (std::size_t i = 0; i < a.objects.size(); ++i) {
        const auto& oa = a.objects[i];
        const auto& ob = b.objects[i];
        if (oa.name != ob.name || oa.cls != ob.cls ||
            oa.bindings.size() != ob.bindings.size())
            return false;
        for (std::size_t j = 0; j < oa.bindings.size(); ++j)
            if (oa.bindings[j].attribute != ob.bindings[j].attribute ||
                oa.bindings[j].value != ob.bindings[j].value)
                return false;
    }
    for (std::size_t i = 0; i < a.creatables.size(); ++i) {
        const auto& ca = a.creatables[i];
        const auto& cb = b.creatables[i];
        if (ca.name != cb.name || ca.cls != cb.cls || ca.owner != cb.owner)
            return false;
    }
    for (std::size_t i = 0; i < a.links.size(); ++i) {
        const auto& la = a.links[i];
        const auto& lb = b.links[i];
        if (la.assoc != lb.assoc || la.source != lb.source || la.target != lb.target)
            return false;
    }
    return true;
}

bool equal(const SequenceDiagramBody& a, const SequenceDiagramBody& b) {
    if (a.name != b.name || a.lifelines.size() != b.lifelines.size() ||
        a.steps.size() != b.steps.size())
        return false;
    for (std::size_t i = 0; i < a.lifelines.size(); ++i)
        if (a.lifelines[i].role != b.lifelines[i].role ||
            a.lifelines[i].cls != b.lifelines[i].cls)
            return false;
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        if (a.steps[i].index() != b.steps[i].index()) return false;
        if (auto* ea = std::get_if<EventDecl>(&a.steps[i])) {
            const auto& eb = std::get<EventDecl>(b.steps[i]);
            if (ea->from != eb.from || ea->to != eb.to || ea->selector != eb.selector ||
                ea->args != eb.args)
                return false;
        } else {
            const auto& sa = std::get<StateLabelDecl>(a.steps[i]);
            const auto& sb = std::get<StateLabelDecl>(b.steps[i]);
            if (sa.role != sb.role || sa.label != sb.label) return false;
        }
    }
    return true;
}

}  // namespace

bool body_equal(const Body& a, const Body& b) {
    if (a.index() != b.index()) return false;
    switch (a.index()) {
        case 0:
            return equal(std::get<ClassDiagramBody>(a), std::get<ClassDiagramBody>(b));
        case 1:
            return equal(std::get<ObjectDiagramBody>(a), std::get<ObjectDiagramBody>(b));
        case 2:
            return automaton_equal(std::get<StateDiagramBody>(a).automaton,
                                   std::get<StateDiagramBody>(b).automaton);
        case 3:
            return equal(std::get<SequenceDiagramBody>(a),
                         std::get<SequenceDiagramBody>(b));
        default:
            return std::get<TextBody>(a).text == std::get<TextBody>(b).text;
    }
}

}  // namespace sysmodel::dsl
