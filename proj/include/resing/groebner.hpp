#pragma once

#include <vector>

#include "resing/poly.hpp"

namespace resing {

/// Finite presentation of a variety; the empty list is the zero ideal
/// (whole space). Zero generators are dropped on construction.
struct IdealBasis {
    std::vector<Poly> gens;
    size_t nvars = 0;

    IdealBasis() = default;
    IdealBasis(std::vector<Poly> g, size_t n);
    void add(const Poly& f);
};

/// Reduced Groebner basis under the global graded order: elements are
/// monic, no leading term divides another, tails fully reduced.
struct GroebnerBasis {
    std::vector<Poly> elems;
    size_t nvars = 0;
    bool contains_one() const;
};

/// Guards that turn pathological inputs into explicit FuelExhausted
/// errors instead of silent wrong answers.
struct GroebnerLimits {
    size_t max_basis = 512;
    size_t max_pairs = 200000;
    unsigned max_degree = 80;
};

GroebnerBasis groebner(const IdealBasis& ideal, const GroebnerLimits& limits = {});

/// Remainder of f on division by the basis (full reduction).
Poly normal_form(const Poly& f, const GroebnerBasis& g);

/// True iff V(I) has no point over an algebraically closed field.
bool is_empty_variety(const IdealBasis& ideal, const GroebnerLimits& limits = {});

/// True iff f vanishes on V(I), i.e. V(I) is contained in V(f)
/// (Rabinowitsch trick in one extra variable).
bool radical_member(const Poly& f, const IdealBasis& ideal, const GroebnerLimits& limits = {});

/// Krull dimension of V(I); -1 for the empty variety. Computed from the
/// leading-term staircase as the largest variable subset meeting no
/// leading-term support.
int dimension(const IdealBasis& ideal, const GroebnerLimits& limits = {});

/// V(a) == V(b), decided by mutual radical membership of generators.
bool same_variety(const IdealBasis& a, const IdealBasis& b, const GroebnerLimits& limits = {});

} // namespace resing
