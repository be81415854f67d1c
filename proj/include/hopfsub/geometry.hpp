#pragma once

#include <functional>

#include "hopfsub/fibration.hpp"
#include "hopfsub/report.hpp"
#include "hopfsub/spaces.hpp"

namespace hopfsub {

/// A point -> ambient-vector map, differentiable along probe curves.
struct FieldEvaluator {
    enum class Kind { BasicExtension, FibreTangent, Custom };
    Kind kind = Kind::Custom;
    std::function<Vec(const Vec&)> eval;
};

/// Central differences with one Richardson step (fourth order).
struct DerivativeScheme {
    double h = 1e-4;
};

/// d/dt F(gamma_E(t)) at t = 0 along the quadric geodesic through (p, E).
Vec ambient_derivative(const PseudoHyperbolicSpace& space, const FieldEvaluator& field,
                       const Vec& p, const Vec& E, const DerivativeScheme& scheme = {});

/// Levi-Civita derivative on the quadric: the tangential projection of the
/// ambient derivative (the position vector is normal).
Vec covariant_derivative(const PseudoHyperbolicSpace& space, const FieldEvaluator& field,
                         const Vec& p, const Vec& E, const DerivativeScheme& scheme = {});

/// Field q -> horizontal part of the constant ambient vector w.
FieldEvaluator horizontal_extension(const Fibration& f, const Vec& w);
/// Field q -> vertical part of the constant ambient vector w.
FieldEvaluator vertical_extension(const Fibration& f, const Vec& w);
/// Field q -> tangential part of the constant ambient vector w.
FieldEvaluator tangential_extension(const PseudoHyperbolicSpace& space, const Vec& w);
/// Along the fibre of p: the unique horizontal field with pushforward equal
/// to that of X at p.  Only defined on the fibre.
FieldEvaluator basic_extension(const Fibration& f, const Vec& p, const Vec& X);

/// O'Neill integrability tensor.  X must be horizontal; E may be horizontal
/// (result vertical) or vertical (result horizontal, computed from the basic
/// extension of X along the fibre).  Mixed E is split linearly.
Vec a_tensor(const Fibration& f, const Vec& X, const Vec& E, const Vec& p,
             const DerivativeScheme& scheme = {});

/// The second O'Neill tensor on two vertical slots; identically zero for
/// totally geodesic fibres, which every catalogued fibration has.
Vec t_tensor(const Fibration& f, const Vec& V, const Vec& W, const Vec& p,
             const DerivativeScheme& scheme = {});

/// Four-slot constant-curvature tensor,
///   R(X,Y,Z,W) = c ( g(X,Z) g(Y,W) - g(Y,Z) g(X,W) ),
/// paired so that R(Z,X,W,X) = g(R(Z,X)X, W).
double constant_curvature_R(const PseudoHyperbolicSpace& space, const Vec& X, const Vec& Y,
                            const Vec& Z, const Vec& W);

/// The curvature operator R(Z,X)X = c ( g(X,X) Z - g(X,Z) X ).
Vec constant_curvature_op(const PseudoHyperbolicSpace& space, const Vec& Z, const Vec& X);

struct JacobiOperator {
    Vec X;
    double eps_x = 0.0;                 // g(X,X)
    std::vector<Vec> frame;             // orthonormal frame of X-perp in H_p
    Mat matrix;                         // operator matrix in that frame
    std::vector<double> eigenvalues;    // sorted ascending
    double max_imag = 0.0;              // largest imaginary part seen
    double self_adjoint_residual = 0.0; // deviation from g-self-adjointness

    struct Cluster {
        double value;
        int multiplicity;
    };
    /// Eigenvalues grouped by the given absolute gap.
    std::vector<Cluster> clusters(double gap = 0.5) const;
};

/// Matrix of Z -> R(Z,X)X - 3 A_X A_X Z on the horizontal complement of X.
/// X must satisfy g(X,X) = +-1; null X is rejected.
JacobiOperator jacobi_operator(const Fibration& f, const Vec& p, const Vec& X,
                               const DerivativeScheme& scheme = {});

struct SpecialBasis {
    Vec p;
    Vec X;
    std::vector<Vec> vertical;     // orthonormal v_1..v_r
    std::vector<Vec> leads;        // L_0..L_{k-1}
    std::vector<Vec> members;      // [L_a, A_{L_a}v_1, ..., A_{L_a}v_r] per block
    int k = 0, q1 = 0, q2 = 0;     // index bookkeeping, s = q1 (r'+1) + q2 (r-r')
};

/// Greedy construction of an orthonormal horizontal basis
/// { L_a, A_{L_a}v_i } with A_{L_a}L_b = 0, starting from L_0 = X.
SpecialBasis special_basis(const Fibration& f, const Vec& p, const Vec& X,
                           const DerivativeScheme& scheme = {});

struct LiftedCurve {
    std::vector<double> times;
    std::vector<Vec> points;
    long reprojections = 0;
    double max_velocity_defect = 0.0;  // horizontality / projection drift seen
};

/// Lift of a base curve through p0, integrated with classical fourth-order
/// steps and quadric re-projection.  Explicit-target fibrations only; the
/// base curve is given in target coordinates.
LiftedCurve horizontal_lift_curve(const Fibration& f, const std::function<Vec(double)>& base_curve,
                                  double t0, double t1, int steps, const Vec& p0);

// --- verification suites -------------------------------------------------

/// Structure-equation residuals at seeded sample frames, including the
/// Clifford-model cross-check of the base curvature and the A*A identities.
std::vector<IdentityResult> oneill_residuals(const Fibration& f, int samples,
                                             std::uint64_t seed, const Tolerances& tol,
                                             bool expensive = false);

/// Two-eigenvalue structure of the horizontal Jacobi operators.
std::vector<IdentityResult> jacobi_spectrum_check(const Fibration& f, int samples,
                                                  std::uint64_t seed, const Tolerances& tol);

/// Eigenspace reciprocity conditions on top of the two-eigenvalue structure.
std::vector<IdentityResult> special_osserman_check(const Fibration& f, int samples,
                                                   std::uint64_t seed, const Tolerances& tol);

/// Anticommuting skew-adjoint structures J_s = A^{v_s} and the curvature
/// reconstruction they induce.
std::vector<IdentityResult> clifford_structure_check(const Fibration& f, int samples,
                                                     std::uint64_t seed, const Tolerances& tol);

/// Special-basis construction at random (p, X), with orthonormality,
/// A_{L_a}L_b, index bookkeeping and basic-along-fibre audits.
std::vector<IdentityResult> special_basis_check(const Fibration& f, int samples,
                                                std::uint64_t seed, const Tolerances& tol);

}  // namespace hopfsub
