#pragma once

// Terms in the ring language extended by rv_d and the Henselian functions.

#include <memory>
#include <string>
#include <vector>

#include "padic/core.hpp"
#include "padic/hensel.hpp"

namespace padic {

class Term {
public:
    enum class Op { Const, Var, Add, Sub, Mul, Rv, Hens, Aux };

    static Term constant(const Rat& c);
    static Term var();
    static Term add(Term a, Term b);
    static Term sub(Term a, Term b);
    static Term mul(Term a, Term b);
    /// rv_d of a field-valued term.
    static Term rv(int d, Term a);
    /// h_{m,d}(a_0, ..., a_m, xi); `coeffs` has m+1 entries, `arg` is rv-valued.
    static Term hens(int d, std::vector<Term> coeffs, Term arg);
    /// An auxiliary rv-valued parameter with a known value.
    static Term aux(RvData xi);

    /// Polynomial f evaluated at the term, as Horner form with folded constants.
    static Term poly_at(const Poly& f, const Term& at);

    Op op() const { return node_->op; }
    bool is_constant() const { return node_->op == Op::Const; }
    const Rat& constant_value() const { return node_->c; }
    const std::vector<Term>& children() const { return node_->kids; }
    int depth_param() const { return node_->d; }
    const RvData& aux_value() const { return node_->xi; }

    /// Field value at y (ignored when the term has no variable), with
    /// ord(result - true value) >= prec.
    Rat evaluate(Prime p, std::int64_t prec, const Rat& y = Rat(0)) const;
    RvData evaluate_rv(Prime p, std::int64_t prec, const Rat& y = Rat(0)) const;

    std::string str() const;
    /// Number of h-nodes.
    int hens_count() const;

private:
    struct Node {
        Op op = Op::Const;
        Rat c;
        int d = 0;
        RvData xi;
        std::vector<Term> kids;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    Rat eval_at(Prime p, std::int64_t work, const Rat& y) const;

    std::shared_ptr<const Node> node_;
};

}  // namespace padic
