#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hopfsub/algebra.hpp"
#include "hopfsub/spaces.hpp"

namespace hopfsub {

enum class TargetKind { Explicit, Quotient };

struct FibreModel {
    int dim;     // r
    int index;   // r'
    std::string model;
};

struct BaseDescriptor {
    int dim;     // n
    int index;   // s
    double curvature;  // -4 for every catalogued base
};

/// Base tangent datum for horizontal lifts.  Explicit targets give a vector
/// in target coordinates; quotient targets give a horizontal vector `vec` at
/// a marked point `at` of the same fibre.
struct BaseTangent {
    Vec vec;
    Vec at;
};

/// One catalogued Hopf pseudo-Riemannian submersion.
///
/// Explicit fibrations (pi1..pi9) carry a polynomial evaluator into a
/// curvature -4 quadric.  Quotient fibrations (pi_C, pi_A, pi_H, pi_B) have
/// no base coordinates; base tangent data live as horizontal vectors at
/// marked fibre points, and fibres are orbits of right multiplication by the
/// unit group of the algebra.  Composites (pi_CH, pi_CB, pi_AB) are carried
/// by upstairs orbit data only.
class Fibration {
public:
    std::string id;
    TargetKind kind = TargetKind::Explicit;
    AlgebraName algebra = AlgebraName::C;
    int variant = 0;           // 1 or 2 for the Hopf-construction fibrations
    int m = 0, t = 0;          // family parameters (quotient fibrations)
    PseudoHyperbolicSpace total;            // the real quadric the machinery works on
    std::optional<PseudoHyperbolicSpace> base_space;  // explicit targets only
    BaseDescriptor base{0, 0, -4.0};
    FibreModel fibre{0, 0, ""};

    // quotient data: imaginary basis indices of the fibre unit group, and of
    // the group already quotiented out of the total space (composites)
    std::vector<int> fibre_units;
    std::vector<int> total_units;

    bool has_quadric_total() const { return total_units.empty(); }

    // --- explicit-target evaluator -----------------------------------------
    Vec evaluate(const Vec& p) const;
    /// Exact differential: all components are quadratic, so d(phi)_p(v) is
    /// assembled by polarization, no finite differences.
    Mat differential(const Vec& p) const;

    // --- vertical / horizontal splitting ------------------------------------
    std::vector<Vec> vertical_frame(const Vec& p) const;
    std::vector<Vec> horizontal_frame(const Vec& p) const;
    Vec vertical_project(const Vec& p, const Vec& w) const;
    Vec horizontal_project(const Vec& p, const Vec& w) const;
    Vec vertical_project(const std::vector<Vec>& vframe, const Vec& w) const;

    // --- fibres -------------------------------------------------------------
    bool same_fibre(const Vec& p, const Vec& q, double tol = 1e-9) const;
    Vec random_fibre_point(const Vec& p, std::mt19937_64& rng) const;
    /// Value at q of the field along the fibre of p that is basic with the
    /// value X at p.  Exact for quotient fibrations (group translation),
    /// a linear solve against the differential for explicit ones.
    Vec basic_transport(const Vec& p, const Vec& X, const Vec& q) const;

    // --- lifts ---------------------------------------------------------------
    Vec horizontal_lift(const Vec& p, const BaseTangent& w) const;

    Vec random_point(std::mt19937_64& rng) const;
    Vec random_tangent(const Vec& p, std::mt19937_64& rng) const;
    Vec random_horizontal(const Vec& p, std::mt19937_64& rng) const;
    Vec random_vertical(const Vec& p, std::mt19937_64& rng) const;
    /// Unit horizontal vector of the requested causal sign (+1 spacelike,
    /// -1 timelike); throws if the horizontal space has no such vectors.
    Vec random_unit_horizontal(const Vec& p, int causal_sign, std::mt19937_64& rng) const;

    std::string to_json() const;
};

/// Hopf construction evaluator for one algebra, before any catalogue fit:
/// variant 1 is ((N(x)-N(y))/2, conj(x) y), variant 2 is ((N(x)+N(y))/2, conj(x) y),
/// on the interleaved identification (x1,y1,...,xd,yd).
Fibration hopf_construction(AlgebraName algebra, int variant);

/// Catalogue constructor.  Family ids take (m, t); fixed ids ignore them.
Fibration make_fibration(const std::string& id, int m = 2, int t = 1);

/// Ids accepted by make_fibration, in catalogue order.
const std::vector<std::string>& fibration_ids();

/// outer after inner; requires the base of inner to be the total of outer
/// as quotient data.  Throws std::invalid_argument on incompatible chaining.
Fibration compose(const Fibration& outer, const Fibration& inner);

/// The nine-component polynomial form of pi9, stored as a literal
/// coefficient table and used as a conformance oracle for the
/// algebra-multiplication evaluator.
Vec pi9_polynomial(const Vec& p);

}  // namespace hopfsub
