#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "kisin/phi_module.hpp"

namespace kisin {

using Rational = boost::rational<long long>;

// A periodic sequence (n_i) describing the module phi(e_i) = u^{n_i} e_{i+1}.
class SimpleSeq {
public:
    SimpleSeq() = default;
    // n is one period (not necessarily minimal).  Throws on n_i < 0, on
    // n_i > er when r is finite, and on an empty period.
    SimpleSeq(int p, int f, int e, std::optional<int> r, std::vector<int> n);

    int p() const { return p_; }
    int f() const { return f_; }
    int e() const { return e_; }
    std::optional<int> r() const { return r_; }
    int er() const;  // throws UnboundedHeight
    const std::vector<int>& stored() const { return n_; }
    int d() const { return d_; }
    int n(int i) const;  // periodic index
    std::vector<int> period() const { return {n_.begin(), n_.begin() + d_}; }

    std::vector<long long> s() const;
    std::vector<Rational> t() const;  // reduced into [0, 1)
    bool in_S() const;
    bool in_Smax() const;
    bool in_Smin() const;  // false when r is unbounded

    SimpleSeq with_period(std::vector<int> n) const { return SimpleSeq(p_, f_, e_, r_, std::move(n)); }
    bool same_params(const SimpleSeq& o) const;
    std::string to_string() const;  // "(2,1)"

private:
    int p_ = 2, f_ = 1, e_ = 1;
    std::optional<int> r_;
    std::vector<int> n_;
    int d_ = 0;
};

struct SeqInvariants {
    int d = 0;
    std::vector<long long> s;
    std::vector<Rational> t;
    bool in_S = false, in_Smax = false, in_Smin = false;
};

SeqInvariants seq_invariants(const SimpleSeq& s);

PhiModule build_module(const SimpleSeq& s);
// The sequence of a module whose Frobenius is exactly the cyclic matrix with
// monic monomial entries and whose rank is the minimal period.
std::optional<SimpleSeq> recognize_simple(const PhiModule& m);

// Smallest b >= 0 with n'_{i+b} = n_i for all i.  This decides isomorphism
// when both sequences are in S; outside S it is only the shift comparison.
std::optional<int> iso_simple(const SimpleSeq& a, const SimpleSeq& b);

struct FrobSolution {
    int index = 0;          // i
    long long v = 0;        // solutions alpha * u^v * e_i
    int scalar_degree = 1;  // alpha ranges over F_{p^scalar_degree} = k meet F_{p^d}
};

// Nonzero solutions of phi^d(x) = u^exp x in M(n), over k[[u]] or k((u)).
// Throws NotInS.
std::optional<FrobSolution> solve_frob_eq(const SimpleSeq& s, long long exp, bool laurent);

struct ClosedForm {
    SimpleSeq m;
    std::vector<long long> q;  // lattice basis u^{-q_i} e_i
};

ClosedForm max_closed_form(const SimpleSeq& s);
// er - max_closed_form(er - n); q gives the lattice basis u^{-q_i} e_i.
ClosedForm min_closed_form(const SimpleSeq& s);

// t_0 = p^b t'_0 mod Z for some b.
bool same_max_class(const SimpleSeq& a, const SimpleSeq& b);
std::vector<int> tame_weights(const SimpleSeq& s);
SimpleSeq dual_seq(const SimpleSeq& s);

// Every sequence in [0, er]^d of minimal period d (one per rotation class
// when necklaces is set, taking the lexicographically least rotation).
std::vector<SimpleSeq> all_sequences(int p, int f, int e, int r, int d, bool necklaces);

std::string classification_csv(const std::vector<SimpleSeq>& seqs);

}  // namespace kisin
