#ifndef PPCOMP_REFERENCE_HPP
#define PPCOMP_REFERENCE_HPP

#include <cstddef>

#include "ppcomp/algebra.hpp"
#include "ppcomp/cm_reduction.hpp"
#include "ppcomp/pentagon.hpp"
#include "ppcomp/structure.hpp"
#include "ppcomp/unary_reduction.hpp"

// Shipped packages. The files under data/ describe the same objects.
namespace ppcomp::reference {

/// Algebra without operations on {0, ..., n-1}.
FinAlgebra pure_set(std::size_t n);

/// Boolean structure C on {0, 1} with the single relation le = {00, 01, 11}.
RelStructure boolean_le();

/// Pure set on {0, 1, 2} with trace {0, 1} and C = boolean_le().
UnaryTypePackage pure_set_package();

/// P = {00, 01, 10, 11}; beta: same first coordinate, gamma: same second,
/// alpha = {{00}, {01}, {10, 11}}.
Pentagon pentagon4();

/// Two-element pentagon {p, q} with alpha = beta = 0 and gamma = 1. Valid
/// but not interesting.
Pentagon pentagon2();

/// pentagon4 as the whole carrier of a pure set, D_k = P^k, N = 4.
AmalgamPackage amalgam4();

/// pentagon4 and pentagon2 side by side on six elements, N = 2, D1 = A,
/// D2 = pairs inside one carrier.
AmalgamPackage disjoint_amalgam();

}  // namespace ppcomp::reference

#endif  // PPCOMP_REFERENCE_HPP
