#include "fasolve/parser.hpp"
#include "fasolve/error.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace fasolve {

char const *to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::Lex: return "lex";
        case ParseErrorKind::Syntax: return "syntax";
        case ParseErrorKind::AnnotationRange: return "annotation-range";
        case ParseErrorKind::Arity: return "arity";
    }
    return "syntax";
}

std::string ParseError::to_string() const {
    return span.to_string() + ": error(" + fasolve::to_string(kind) + "): " + message;
}

namespace {

enum class Tok {
    Ident, Variable, Number, Aggregate, Not,
    LParen, RParen, LBrace, RBrace, Comma, Semicolon, Bar, Colon, If, Dot,
    Eq, Ne, Lt, Le, Gt, Ge, Slash, Minus,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string const &file, std::vector<ParseError> &errors)
    : text_(text), file_(file), errors_(errors) { }

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            Token tok;
            tok.span = span();
            if (pos_ >= text_.size()) {
                out.push_back(tok);
                return out;
            }
            char c = text_[pos_];
            if (std::islower(static_cast<unsigned char>(c))) {
                tok.text = word();
                tok.kind = tok.text == "not" ? Tok::Not : Tok::Ident;
            }
            else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
                tok.text = word();
                tok.kind = Tok::Variable;
            }
            else if (std::isdigit(static_cast<unsigned char>(c))) {
                tok.kind = Tok::Number;
                tok.text = number();
            }
            else if (c == '#') {
                advance();
                if (pos_ < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_]))) {
                    tok.kind = Tok::Aggregate;
                    tok.text = word();
                }
                else {
                    errors_.push_back({tok.span, ParseErrorKind::Lex, "expected aggregate name after '#'"});
                    continue;
                }
            }
            else if (!punct(tok)) {
                std::string shown = static_cast<unsigned char>(c) < 0x80 ? std::string(1, c) : std::string("non-ASCII byte");
                errors_.push_back({tok.span, ParseErrorKind::Lex, "unexpected character '" + shown + "'"});
                advance();
                continue;
            }
            out.push_back(std::move(tok));
        }
    }

private:
    SourceSpan span() const { return {file_, line_, column_}; }

    void advance() {
        if (text_[pos_] == '\n') { ++line_; column_ = 1; }
        else { ++column_; }
        ++pos_;
    }

    bool at(char c, std::size_t off = 0) const { return pos_ + off < text_.size() && text_[pos_ + off] == c; }

    void skip_blank() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') { advance(); }
            }
            else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            }
            else {
                break;
            }
        }
    }

    std::string word() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            advance();
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) { advance(); }
        if (at('.') && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            advance();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) { advance(); }
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    bool punct(Token &tok) {
        auto two = [&](char next, Tok yes, Tok no) {
            advance();
            if (at(next)) {
                advance();
                tok.kind = yes;
            }
            else {
                tok.kind = no;
            }
        };
        switch (text_[pos_]) {
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            case '{': tok.kind = Tok::LBrace; break;
            case '}': tok.kind = Tok::RBrace; break;
            case ',': tok.kind = Tok::Comma; break;
            case ';': tok.kind = Tok::Semicolon; break;
            case '|': tok.kind = Tok::Bar; break;
            case '.': tok.kind = Tok::Dot; break;
            case '=': tok.kind = Tok::Eq; break;
            case '/': tok.kind = Tok::Slash; break;
            case '-': tok.kind = Tok::Minus; break;
            case ':': two('-', Tok::If, Tok::Colon); return true;
            case '<': two('=', Tok::Le, Tok::Lt); return true;
            case '>': two('=', Tok::Ge, Tok::Gt); return true;
            case '!':
                if (!at('=', 1)) { return false; }
                advance();
                advance();
                tok.kind = Tok::Ne;
                return true;
            default: return false;
        }
        advance();
        return true;
    }

    std::string_view text_;
    std::string const &file_;
    std::vector<ParseError> &errors_;
    std::size_t pos_ = 0;
    unsigned line_ = 1;
    unsigned column_ = 1;
};

struct SyntaxFailure {
    ParseError error;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, Dialect dialect, std::vector<ParseError> &errors)
    : toks_(std::move(tokens)), dialect_(dialect), errors_(errors) { }

    Program run() {
        Program program;
        while (peek().kind != Tok::End) {
            std::size_t errors_before = errors_.size();
            try {
                Rule rule = parse_rule();
                if (errors_.size() == errors_before) { program.rules.push_back(std::move(rule)); }
            }
            catch (SyntaxFailure const &failure) {
                errors_.push_back(failure.error);
                recover();
            }
        }
        return program;
    }

private:
    Token const &peek(std::size_t off = 0) const {
        std::size_t i = std::min(pos_ + off, toks_.size() - 1);
        return toks_[i];
    }

    Token const &next() {
        Token const &t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) { ++pos_; }
        return t;
    }

    bool accept(Tok kind) {
        if (peek().kind == kind) {
            next();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::string message, ParseErrorKind kind = ParseErrorKind::Syntax) const {
        throw SyntaxFailure{{peek().span, kind, std::move(message)}};
    }

    Token const &expect(Tok kind, char const *what) {
        if (peek().kind != kind) {
            fail(std::string("expected ") + what + found());
        }
        return next();
    }

    std::string found() const {
        auto const &t = peek();
        if (t.kind == Tok::End) { return ", found end of input"; }
        if (!t.text.empty()) { return ", found '" + t.text + "'"; }
        return "";
    }

    // Skip past the next rule-terminating dot.
    void recover() {
        while (peek().kind != Tok::End) {
            if (next().kind == Tok::Dot) { return; }
        }
    }

    void note_arity(Atom const &atom, SourceSpan const &span) {
        auto [it, inserted] = arities_.emplace(atom.predicate, atom.args.size());
        if (!inserted && it->second != atom.args.size()) {
            errors_.push_back({span, ParseErrorKind::Arity,
                               "predicate " + atom.predicate + " used with arity " + std::to_string(atom.args.size()) +
                                   ", previously " + std::to_string(it->second)});
        }
    }

    void note_object_var(std::string const &name, SourceSpan const &span) {
        if (annotation_vars_.count(name)) { var_clash(name, span); }
        object_vars_.insert(name);
    }

    void note_annotation_var(std::string const &name, SourceSpan const &span) {
        if (object_vars_.count(name)) { var_clash(name, span); }
        annotation_vars_.insert(name);
    }

    void var_clash(std::string const &name, SourceSpan const &span) {
        throw SyntaxFailure{{span, ParseErrorKind::Syntax,
                             "variable " + name + " used both as object variable and annotation variable"}};
    }

    Rule parse_rule() {
        object_vars_.clear();
        annotation_vars_.clear();
        Rule rule;
        rule.span = peek().span;
        if (peek().kind == Tok::If) { fail("rules need a non-empty head"); }
        rule.head.push_back(parse_annotated_atom());
        while (accept(Tok::Bar)) { rule.head.push_back(parse_annotated_atom()); }
        if (accept(Tok::If)) {
            rule.body.push_back(parse_literal());
            while (accept(Tok::Comma)) { rule.body.push_back(parse_literal()); }
        }
        expect(Tok::Dot, "'.' at end of rule");
        return rule;
    }

    Literal parse_literal() {
        Literal lit;
        lit.negated = accept(Tok::Not);
        if (peek().kind == Tok::Aggregate) { lit.content = parse_aggregate(); }
        else { lit.content = parse_annotated_atom(); }
        return lit;
    }

    AnnotatedAtom parse_annotated_atom() {
        AnnotatedAtom out;
        out.span = peek().span;
        out.atom = parse_atom();
        out.annotation = parse_optional_annotation();
        return out;
    }

    Annotation parse_optional_annotation() {
        if (peek().kind != Tok::Colon) { return Annotation{}; }
        if (dialect_ == Dialect::Classical) { fail("annotations are not allowed in classical mode"); }
        next();
        return parse_annotation();
    }

    Atom parse_atom() {
        auto span = peek().span;
        auto const &name = expect(Tok::Ident, "predicate name");
        Atom atom{name.text, {}};
        if (accept(Tok::LParen)) {
            atom.args.push_back(parse_term());
            while (accept(Tok::Comma)) { atom.args.push_back(parse_term()); }
            expect(Tok::RParen, "')'");
        }
        note_arity(atom, span);
        return atom;
    }

    Term parse_term() {
        auto const &t = peek();
        switch (t.kind) {
            case Tok::Number:
            case Tok::Minus: {
                bool negative = accept(Tok::Minus);
                auto const &num = expect(Tok::Number, "number");
                Rational value;
                parse_rational(num.text, value);
                return Term::number(negative ? Rational(-value) : value);
            }
            case Tok::Variable: {
                note_object_var(t.text, t.span);
                return Term::variable(next().text);
            }
            case Tok::Ident: {
                std::string name = next().text;
                if (!accept(Tok::LParen)) { return Term::symbol(std::move(name)); }
                std::vector<Term> args;
                args.push_back(parse_term());
                while (accept(Tok::Comma)) { args.push_back(parse_term()); }
                expect(Tok::RParen, "')'");
                return Term::function(std::move(name), std::move(args));
            }
            default: fail("expected term" + found());
        }
    }

    Annotation parse_annotation() {
        auto const &t = peek();
        switch (t.kind) {
            case Tok::Number:
            case Tok::Minus: {
                auto span = t.span;
                std::string text = accept(Tok::Minus) ? "-" : "";
                text += expect(Tok::Number, "grade").text;
                if (accept(Tok::Slash)) { text += "/" + expect(Tok::Number, "denominator").text; }
                Rational value;
                if (!parse_rational(text, value)) {
                    errors_.push_back({span, ParseErrorKind::Lex, "malformed grade '" + text + "'"});
                    return Annotation{};
                }
                if (sgn(value) < 0 || cmp(value, 1) > 0) {
                    errors_.push_back({span, ParseErrorKind::AnnotationRange, "grade " + text + " is outside [0,1]"});
                    return Annotation{};
                }
                return Annotation::constant(Grade{value});
            }
            case Tok::Variable: {
                note_annotation_var(t.text, t.span);
                return Annotation::variable(next().text);
            }
            case Tok::Ident: {
                auto span = t.span;
                std::string name = next().text;
                auto op = find_builtin(name);
                if (!op) {
                    throw SyntaxFailure{{span, ParseErrorKind::Syntax, "unknown annotation function '" + name + "'"}};
                }
                expect(Tok::LParen, "'(' after annotation function");
                std::vector<Annotation> args;
                args.push_back(parse_annotation());
                while (accept(Tok::Comma)) { args.push_back(parse_annotation()); }
                expect(Tok::RParen, "')'");
                auto const &info = builtin_info(*op);
                if (args.size() != info.arity) {
                    errors_.push_back({span, ParseErrorKind::Arity,
                                       "annotation function " + name + " expects " + std::to_string(info.arity) +
                                           " argument(s), got " + std::to_string(args.size())});
                    return Annotation{};
                }
                return Annotation::function(*op, std::move(args));
            }
            default: fail("expected annotation" + found());
        }
    }

    AggregateAtom parse_aggregate() {
        AggregateAtom agg;
        agg.span = peek().span;
        std::string name = next().text;
        static std::map<std::string, AggregateFn> const names{
            {"sum", AggregateFn::Sum},     {"sum_f", AggregateFn::Sum},     {"times", AggregateFn::Times},
            {"times_f", AggregateFn::Times}, {"min", AggregateFn::Min},     {"min_f", AggregateFn::Min},
            {"max", AggregateFn::Max},     {"max_f", AggregateFn::Max},     {"count", AggregateFn::Count},
            {"count_f", AggregateFn::Count},
        };
        auto it = names.find(name);
        if (it == names.end()) {
            throw SyntaxFailure{{agg.span, ParseErrorKind::Syntax, "unknown aggregate '#" + name + "'"}};
        }
        agg.fn = it->second;
        expect(Tok::LBrace, "'{'");
        if (peek().kind != Tok::RBrace) {
            agg.set.elements.push_back(parse_element());
            while (accept(Tok::Semicolon)) { agg.set.elements.push_back(parse_element()); }
        }
        expect(Tok::RBrace, "'}'");
        agg.cmp = parse_cmp();
        agg.guard = parse_term();
        agg.annotation = parse_optional_annotation();
        return agg;
    }

    SetElement parse_element() {
        SetElement el;
        el.item = parse_term();
        if (dialect_ == Dialect::Classical) {
            if (!accept(Tok::Colon) && !accept(Tok::Bar)) { fail("expected ':' after aggregate element" + found()); }
        }
        else {
            expect(Tok::Colon, "':' after aggregate item");
            el.grade = parse_annotation();
            expect(Tok::Bar, "'|' before element conjunction");
        }
        el.conjunction.push_back(parse_annotated_atom());
        while (accept(Tok::Comma)) { el.conjunction.push_back(parse_annotated_atom()); }
        return el;
    }

    CmpOp parse_cmp() {
        switch (peek().kind) {
            case Tok::Eq: next(); return CmpOp::Eq;
            case Tok::Ne: next(); return CmpOp::Ne;
            case Tok::Lt: next(); return CmpOp::Lt;
            case Tok::Le: next(); return CmpOp::Le;
            case Tok::Gt: next(); return CmpOp::Gt;
            case Tok::Ge: next(); return CmpOp::Ge;
            default: fail("expected comparison operator" + found());
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Dialect dialect_;
    std::vector<ParseError> &errors_;
    std::map<std::string, std::size_t> arities_;
    std::set<std::string> object_vars_;
    std::set<std::string> annotation_vars_;
};

} // namespace

ParseResult parse_program(std::string_view text, std::string const &file, Dialect dialect) {
    ParseResult result;
    auto tokens = Lexer(text, file, result.errors).run();
    result.program = Parser(std::move(tokens), dialect, result.errors).run();
    return result;
}

std::string print_annotated_atom(AnnotatedAtom const &atom) { return atom.to_string(); }

std::string print_aggregate(AggregateAtom const &agg) {
    std::string out = std::string("#") + to_string(agg.fn) + "{";
    for (std::size_t i = 0; i < agg.set.elements.size(); ++i) {
        auto const &el = agg.set.elements[i];
        out += i ? " ; " : " ";
        out += el.item.to_string() + " : " + el.grade.to_string() + " |";
        for (std::size_t j = 0; j < el.conjunction.size(); ++j) {
            out += j ? ", " : " ";
            out += el.conjunction[j].to_string();
        }
    }
    out += agg.set.elements.empty() ? "} " : " } ";
    out += std::string(to_string(agg.cmp)) + " " + agg.guard.to_string() + " : " + agg.annotation.to_string();
    return out;
}

std::string print_literal(Literal const &lit) {
    std::string out = lit.negated ? "not " : "";
    return out + (lit.is_aggregate() ? print_aggregate(lit.aggregate()) : print_annotated_atom(lit.atom()));
}

std::string print_rule(Rule const &rule) {
    std::string out;
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
        if (i) { out += " | "; }
        out += print_annotated_atom(rule.head[i]);
    }
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        out += i ? ", " : " :- ";
        out += print_literal(rule.body[i]);
    }
    return out + ".";
}

std::string print_program(Program const &program) {
    std::string out;
    for (auto const &rule : program.rules) { out += print_rule(rule) + "\n"; }
    return out;
}

} // namespace fasolve
