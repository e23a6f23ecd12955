/** @file formula.hh
 *  @brief Two-level modal formulas: syntax tree, parser and printer.
 *
 *  State formulas:    φ ::= T | φ & φ | <>ψ | []ψ
 *  Measure formulas:  ψ ::= ψ & ψ | ψ | ψ | [φ < q] | [φ > q]     (0 ≤ q < 1)
 *
 *  `&` binds tighter than `|`, both associate to the left, and the
 *  modalities take a single bracketed or parenthesized measure formula.
 *  Parentheses group at either level. to_string() emits the canonical
 *  text, which parses back to an identical tree.
 */
#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "stochnd/rational.hh"

namespace stochnd {

struct StateNode;
struct MeasureNode;
using StateFormula = std::shared_ptr<const StateNode>;
using MeasureFormula = std::shared_ptr<const MeasureNode>;

enum class Cmp { LT, GT };

struct StateNode {
    enum class Kind { Top, And, Diamond, Box };
    Kind kind;
    StateFormula left, right;  // And
    MeasureFormula body;       // Diamond, Box
};

struct MeasureNode {
    enum class Kind { And, Or, Threshold };
    Kind kind;
    MeasureFormula left, right;  // And, Or
    StateFormula arg;            // Threshold
    Cmp cmp = Cmp::GT;
    Rational q;
};

StateFormula top();
StateFormula conj(StateFormula a, StateFormula b);
StateFormula diamond(MeasureFormula body);
StateFormula box(MeasureFormula body);
MeasureFormula mconj(MeasureFormula a, MeasureFormula b);
MeasureFormula mdisj(MeasureFormula a, MeasureFormula b);
/// Throws Error(ThresholdOutOfRange) unless 0 ≤ q < 1.
MeasureFormula threshold(StateFormula arg, Cmp cmp, Rational q);

/// Measure formulas holding for every measure / for none.
MeasureFormula always();
MeasureFormula never();

bool equal(const StateFormula& a, const StateFormula& b);
bool equal(const MeasureFormula& a, const MeasureFormula& b);

std::string to_string(const StateFormula& f);
std::string to_string(const MeasureFormula& f);

/// Throws SyntaxError carrying the byte offset of the offending token;
/// its code is ThresholdOutOfRange for a well-formed threshold ≥ 1.
StateFormula parse_formula(std::string_view text);

/// Number of operators and constants.
std::size_t formula_size(const StateFormula& f);

}  // namespace stochnd
