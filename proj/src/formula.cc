#include "stochnd/formula.hh"

#include <cctype>
#include <optional>
#include <vector>

#include "stochnd/error.hh"

namespace stochnd {

StateFormula top() { return std::make_shared<const StateNode>(StateNode{StateNode::Kind::Top, {}, {}, {}}); }

StateFormula conj(StateFormula a, StateFormula b) {
    return std::make_shared<const StateNode>(
        StateNode{StateNode::Kind::And, std::move(a), std::move(b), {}});
}

StateFormula diamond(MeasureFormula body) {
    return std::make_shared<const StateNode>(
        StateNode{StateNode::Kind::Diamond, {}, {}, std::move(body)});
}

StateFormula box(MeasureFormula body) {
    return std::make_shared<const StateNode>(StateNode{StateNode::Kind::Box, {}, {}, std::move(body)});
}

MeasureFormula mconj(MeasureFormula a, MeasureFormula b) {
    MeasureNode n{MeasureNode::Kind::And, std::move(a), std::move(b), {}, Cmp::GT, 0};
    return std::make_shared<const MeasureNode>(std::move(n));
}

MeasureFormula mdisj(MeasureFormula a, MeasureFormula b) {
    MeasureNode n{MeasureNode::Kind::Or, std::move(a), std::move(b), {}, Cmp::GT, 0};
    return std::make_shared<const MeasureNode>(std::move(n));
}

MeasureFormula threshold(StateFormula arg, Cmp cmp, Rational q) {
    if (sgn(q) < 0 || q >= 1)
        throw Error(Errc::ThresholdOutOfRange, "threshold " + format_rational(q) + " not in [0,1)");
    MeasureNode n{MeasureNode::Kind::Threshold, {}, {}, std::move(arg), cmp, std::move(q)};
    return std::make_shared<const MeasureNode>(std::move(n));
}

MeasureFormula always() {
    return mdisj(threshold(top(), Cmp::LT, Rational(1, 2)), threshold(top(), Cmp::GT, 0));
}

MeasureFormula never() { return threshold(top(), Cmp::LT, 0); }

bool equal(const StateFormula& a, const StateFormula& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case StateNode::Kind::Top:
            return true;
        case StateNode::Kind::And:
            return equal(a->left, b->left) && equal(a->right, b->right);
        case StateNode::Kind::Diamond:
        case StateNode::Kind::Box:
            return equal(a->body, b->body);
    }
    return false;
}

bool equal(const MeasureFormula& a, const MeasureFormula& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    if (a->kind == MeasureNode::Kind::Threshold)
        return a->cmp == b->cmp && a->q == b->q && equal(a->arg, b->arg);
    return equal(a->left, b->left) && equal(a->right, b->right);
}

namespace {

std::string atom_string(const MeasureFormula& f);

std::string state_string(const StateFormula& f) {
    switch (f->kind) {
        case StateNode::Kind::Top:
            return "T";
        case StateNode::Kind::And: {
            std::string r = state_string(f->right);
            if (f->right->kind == StateNode::Kind::And) r = "(" + r + ")";
            return state_string(f->left) + " & " + r;
        }
        case StateNode::Kind::Diamond:
            return "<>" + atom_string(f->body);
        case StateNode::Kind::Box:
            return "[]" + atom_string(f->body);
    }
    return {};
}

std::string measure_string(const MeasureFormula& f) {
    using K = MeasureNode::Kind;
    switch (f->kind) {
        case K::Threshold:
            return atom_string(f);
        case K::Or: {
            std::string r = measure_string(f->right);
            if (f->right->kind == K::Or) r = "(" + r + ")";
            return measure_string(f->left) + " | " + r;
        }
        case K::And: {
            std::string l = measure_string(f->left);
            std::string r = measure_string(f->right);
            if (f->left->kind == K::Or) l = "(" + l + ")";
            if (f->right->kind != K::Threshold) r = "(" + r + ")";
            return l + " & " + r;
        }
    }
    return {};
}

std::string atom_string(const MeasureFormula& f) {
    if (f->kind != MeasureNode::Kind::Threshold) return "(" + measure_string(f) + ")";
    return "[" + state_string(f->arg) + (f->cmp == Cmp::LT ? " < " : " > ") +
           format_rational(f->q) + "]";
}

enum class Tok { Top, And, Or, Diamond, Box, LBrack, RBrack, LParen, RParen, Lt, Gt, Number, End };

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        auto next_is = [&](char d) { return i + 1 < s.size() && s[i + 1] == d; };
        switch (c) {
            case 'T': out.push_back({Tok::Top, start, "T"}); ++i; break;
            case '&': out.push_back({Tok::And, start, "&"}); ++i; break;
            case '|': out.push_back({Tok::Or, start, "|"}); ++i; break;
            case '(': out.push_back({Tok::LParen, start, "("}); ++i; break;
            case ')': out.push_back({Tok::RParen, start, ")"}); ++i; break;
            case ']': out.push_back({Tok::RBrack, start, "]"}); ++i; break;
            case '>': out.push_back({Tok::Gt, start, ">"}); ++i; break;
            case '[':
                if (next_is(']')) {
                    out.push_back({Tok::Box, start, "[]"});
                    i += 2;
                } else {
                    out.push_back({Tok::LBrack, start, "["});
                    ++i;
                }
                break;
            case '<':
                if (next_is('>')) {
                    out.push_back({Tok::Diamond, start, "<>"});
                    i += 2;
                } else {
                    out.push_back({Tok::Lt, start, "<"});
                    ++i;
                }
                break;
            default:
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                    if (i < s.size() && s[i] == '/') {
                        ++i;
                        std::size_t den = i;
                        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                        if (den == i) throw SyntaxError(Errc::SyntaxError, i, "missing denominator");
                    }
                    out.push_back({Tok::Number, start, std::string(s.substr(start, i - start))});
                } else {
                    throw SyntaxError(Errc::SyntaxError, start,
                                      std::string("unexpected character '") + c + "'");
                }
        }
    }
    out.push_back({Tok::End, s.size(), ""});
    return out;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    StateFormula parse() {
        StateFormula f = state();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw SyntaxError(Errc::SyntaxError, t.pos,
                          t.kind == Tok::End ? msg + " (end of input)" : msg);
    }
    void expect(Tok k, const char* what) {
        if (!accept(k)) fail(std::string("expected ") + what);
    }

    StateFormula state() {
        StateFormula f = state_unary();
        while (accept(Tok::And)) f = conj(f, state_unary());
        return f;
    }

    StateFormula state_unary() {
        switch (peek().kind) {
            case Tok::Top:
                advance();
                return top();
            case Tok::Diamond:
                advance();
                return diamond(measure_atom());
            case Tok::Box:
                advance();
                return box(measure_atom());
            case Tok::LParen: {
                advance();
                StateFormula f = state();
                expect(Tok::RParen, "')'");
                return f;
            }
            default:
                fail("expected a state formula");
        }
    }

    MeasureFormula measure() {
        MeasureFormula f = measure_conj();
        while (accept(Tok::Or)) f = mdisj(f, measure_conj());
        return f;
    }

    MeasureFormula measure_conj() {
        MeasureFormula f = measure_atom();
        while (accept(Tok::And)) f = mconj(f, measure_atom());
        return f;
    }

    MeasureFormula measure_atom() {
        if (accept(Tok::LParen)) {
            MeasureFormula f = measure();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (!accept(Tok::LBrack)) fail("expected '[' or '(' opening a measure formula");
        std::size_t mark = pos_;
        std::optional<SyntaxError> first;
        try {
            return threshold_body();
        } catch (const SyntaxError& e) {
            if (e.code() != Errc::SyntaxError) throw;
            first = e;
        }
        std::size_t first_end = pos_;
        pos_ = mark;
        try {
            MeasureFormula f = measure();
            expect(Tok::RBrack, "']'");
            return f;
        } catch (const SyntaxError& e) {
            if (e.code() != Errc::SyntaxError) throw;
            // Report whichever reading got further.
            if (e.position() >= first->position()) throw;
            pos_ = first_end;
            throw *first;
        }
    }

    MeasureFormula threshold_body() {
        StateFormula arg = state();
        Cmp cmp;
        if (accept(Tok::Lt))
            cmp = Cmp::LT;
        else if (accept(Tok::Gt))
            cmp = Cmp::GT;
        else
            fail("expected '<' or '>'");
        if (peek().kind != Tok::Number) fail("expected a rational threshold");
        const Token& num = advance();
        Rational q;
        try {
            q = parse_rational(num.text);
        } catch (const Error&) {
            throw SyntaxError(Errc::SyntaxError, num.pos, "malformed rational '" + num.text + "'");
        }
        if (q >= 1)
            throw SyntaxError(Errc::ThresholdOutOfRange, num.pos,
                              "threshold " + num.text + " not in [0,1)");
        expect(Tok::RBrack, "']'");
        return threshold(std::move(arg), cmp, std::move(q));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::size_t measure_size(const MeasureFormula& f);

std::size_t state_size(const StateFormula& f) {
    switch (f->kind) {
        case StateNode::Kind::Top:
            return 1;
        case StateNode::Kind::And:
            return 1 + state_size(f->left) + state_size(f->right);
        default:
            return 1 + measure_size(f->body);
    }
}

std::size_t measure_size(const MeasureFormula& f) {
    if (f->kind == MeasureNode::Kind::Threshold) return 1 + state_size(f->arg);
    return 1 + measure_size(f->left) + measure_size(f->right);
}

}  // namespace

std::string to_string(const StateFormula& f) { return state_string(f); }
std::string to_string(const MeasureFormula& f) { return measure_string(f); }

StateFormula parse_formula(std::string_view text) { return Parser(lex(text)).parse(); }

std::size_t formula_size(const StateFormula& f) { return state_size(f); }

}  // namespace stochnd
