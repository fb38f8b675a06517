#pragma once

#include "rdlie/alternating.hpp"

namespace rdlie {

/// f∘g for f of arity m and g of arity n, summing over (n, m−1)-shuffles:
/// (f∘g)(x_1,…,x_{m+n−1}) = Σ_τ (−1)^τ f(g(x_τ(1),…,x_τ(n)), x_τ(n+1),…).
AlternatingMap circle(AlternatingMap const& f, AlternatingMap const& g);

/// [f,g]_NR = f∘g − (−1)^{|f||g|} g∘f with |f| = arity − 1.
AlternatingMap nr_bracket(AlternatingMap const& f, AlternatingMap const& g);

/// ω ∈ Hom(∧²V, V) is Maurer–Cartan iff [ω,ω]_NR = 0, i.e. ω is a Lie bracket.
bool is_mc(AlternatingMap const& omega);

/// [f,[g,h]] = [[f,g],h] + (−1)^{|f||g|}[g,[f,h]], compared coefficient by coefficient.
bool graded_jacobi_check(AlternatingMap const& f, AlternatingMap const& g, AlternatingMap const& h);

inline int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace rdlie
