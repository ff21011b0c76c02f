#include "padic/term.hpp"

#include <sstream>

namespace padic {

Term Term::constant(const Rat& c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->c = c;
    n->c.canonicalize();
    return Term(std::move(n));
}

Term Term::var() {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    return Term(std::move(n));
}

Term Term::add(Term a, Term b) {
    if (a.is_constant() && b.is_constant()) return constant(a.constant_value() + b.constant_value());
    if (a.is_constant() && a.constant_value() == 0) return b;
    if (b.is_constant() && b.constant_value() == 0) return a;
    auto n = std::make_shared<Node>();
    n->op = Op::Add;
    n->kids = {std::move(a), std::move(b)};
    return Term(std::move(n));
}

Term Term::sub(Term a, Term b) {
    if (a.is_constant() && b.is_constant()) return constant(a.constant_value() - b.constant_value());
    if (b.is_constant() && b.constant_value() == 0) return a;
    auto n = std::make_shared<Node>();
    n->op = Op::Sub;
    n->kids = {std::move(a), std::move(b)};
    return Term(std::move(n));
}

Term Term::mul(Term a, Term b) {
    if (a.is_constant() && b.is_constant()) return constant(a.constant_value() * b.constant_value());
    if ((a.is_constant() && a.constant_value() == 0) || (b.is_constant() && b.constant_value() == 0))
        return constant(Rat(0));
    if (a.is_constant() && a.constant_value() == 1) return b;
    if (b.is_constant() && b.constant_value() == 1) return a;
    auto n = std::make_shared<Node>();
    n->op = Op::Mul;
    n->kids = {std::move(a), std::move(b)};
    return Term(std::move(n));
}

Term Term::rv(int d, Term a) {
    auto n = std::make_shared<Node>();
    n->op = Op::Rv;
    n->d = d;
    n->kids = {std::move(a)};
    return Term(std::move(n));
}

Term Term::hens(int d, std::vector<Term> coeffs, Term arg) {
    if (coeffs.empty()) throw std::invalid_argument("Term::hens: needs at least one coefficient");
    auto n = std::make_shared<Node>();
    n->op = Op::Hens;
    n->d = d;
    n->kids = std::move(coeffs);
    n->kids.push_back(std::move(arg));
    return Term(std::move(n));
}

Term Term::aux(RvData xi) {
    auto n = std::make_shared<Node>();
    n->op = Op::Aux;
    n->xi = std::move(xi);
    n->d = n->xi.depth;
    return Term(std::move(n));
}

Term Term::poly_at(const Poly& f, const Term& at) {
    Term acc = constant(Rat(0));
    const auto& c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add(mul(acc, at), constant(*it));
    return acc;
}

Rat Term::eval_at(Prime p, std::int64_t work, const Rat& y) const {
    const Node& n = *node_;
    switch (n.op) {
        case Op::Const: return n.c;
        case Op::Var: return y;
        case Op::Add: return n.kids[0].eval_at(p, work, y) + n.kids[1].eval_at(p, work, y);
        case Op::Sub: return n.kids[0].eval_at(p, work, y) - n.kids[1].eval_at(p, work, y);
        case Op::Mul: return n.kids[0].eval_at(p, work, y) * n.kids[1].eval_at(p, work, y);
        case Op::Hens: {
            std::vector<Rat> a;
            for (std::size_t i = 0; i + 1 < n.kids.size(); ++i)
                a.push_back(truncate(n.kids[i].eval_at(p, work, y), p, work));
            RvData xi = n.kids.back().evaluate_rv(p, work, y);
            auto r = padic::h(a, xi, p);
            if (!r) return Rat(0);
            return refine_root(*r, work).approx;
        }
        case Op::Rv:
        case Op::Aux: break;
    }
    throw std::logic_error("Term::evaluate: rv-valued term used as a field value");
}

Rat Term::evaluate(Prime p, std::int64_t prec, const Rat& y) const {
    if (hens_count() == 0) return eval_at(p, prec, y);
    std::int64_t work = prec + 16;
    Rat prev = eval_at(p, work, y);
    for (int iter = 0; iter < 8; ++iter) {
        work *= 2;
        Rat cur = eval_at(p, work, y);
        if (ord(cur - prev, p) >= Val(prec)) return cur;
        prev = cur;
    }
    throw BoundExceeded("Term::evaluate: value did not stabilise");
}

RvData Term::evaluate_rv(Prime p, std::int64_t prec, const Rat& y) const {
    const Node& n = *node_;
    if (n.op == Op::Aux) return n.xi;
    if (n.op == Op::Rv) {
        Rat v = n.kids[0].evaluate(p, prec, y);
        return padic::rv(v, p, n.d);
    }
    throw std::logic_error("Term::evaluate_rv: field-valued term used as rv value");
}

int Term::hens_count() const {
    int c = node_->op == Op::Hens ? 1 : 0;
    for (const auto& k : node_->kids) c += k.hens_count();
    return c;
}

std::string Term::str() const {
    const Node& n = *node_;
    std::ostringstream os;
    switch (n.op) {
        case Op::Const: os << n.c.get_str(); break;
        case Op::Var: os << "y"; break;
        case Op::Add: os << "(" << n.kids[0].str() << " + " << n.kids[1].str() << ")"; break;
        case Op::Sub: os << "(" << n.kids[0].str() << " - " << n.kids[1].str() << ")"; break;
        case Op::Mul: os << n.kids[0].str() << "*" << n.kids[1].str(); break;
        case Op::Rv: os << "rv" << n.d << "(" << n.kids[0].str() << ")"; break;
        case Op::Aux:
            os << "xi" << to_string(n.xi);
            break;
        case Op::Hens: {
            os << "h[" << n.kids.size() - 2 << "," << n.d << "](";
            for (std::size_t i = 0; i < n.kids.size(); ++i) {
                if (i) os << ", ";
                os << n.kids[i].str();
            }
            os << ")";
            break;
        }
    }
    return os.str();
}

}  // namespace padic
