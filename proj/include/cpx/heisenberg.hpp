#pragma once

#include <array>
#include <string>
#include <vector>

#include "cpx/rational.hpp"

namespace cpx {

/// Finite-dimensional module of the Heisenberg algebra h_{2n+1}: matrices
/// A_1..A_{2n} for the degree-one part and Z for the centre, satisfying
/// [A_a, A_b] = 2 J_ab Z and [Z, A_a] = 0 exactly (J the standard Darboux
/// form on R^{2n}).
struct HeisenbergModule {
    int n = 0;
    int dim = 0;
    std::vector<RatMat> A;
    RatMat Z;
    std::string name;

    /// exact check of the defining relations; true iff they hold.
    bool relations_hold() const;
};

HeisenbergModule trivial_module(int n);

/// Fiber of the three-slot bundle (sigma, mu_a, rho), with the grading part
/// of its connection as the degree-one action.
HeisenbergModule three_slot_module(int n);

/// Trace-free part of the second skew power, by exact derivation extension.
HeisenbergModule induced_skew_module(int n);

/// Chevalley-Eilenberg cohomology dimensions (degrees 0..top); computed with
/// exact rational ranks. d o d = 0 is verified exactly during assembly.
std::vector<long> koszul_cohomology_dims(const HeisenbergModule& M, int top_degree);

/// Dimensions through the reduced complexes: the trace-free three-step
/// complex for n >= 3, and its second-order variant for n = 2. Returns
/// (H^0, H^1, H^2).
std::array<long, 3> reduced_cohomology_dims(const HeisenbergModule& M);

/// Dimensions of the reduced cochain spaces (for bookkeeping output).
std::array<long, 4> reduced_space_dims(const HeisenbergModule& M);

/// Weyl dimension formula for the symplectic group C_n with Dynkin labels
/// (a_1..a_n); exact integer.
long weyl_dim_sp(const std::vector<long>& labels);

}  // namespace cpx
