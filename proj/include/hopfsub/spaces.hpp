#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace hopfsub {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Signature {
    int dim;
    int index;  // number of negative directions
};

/// The quadric { x in R^{m+1} : <x,x> = 1/c } for a diagonal inner product
/// with the given sign pattern.  c < 0 throughout; the canonical model puts
/// the index+1 negative signs first, but fibration charts may permute them.
struct PseudoHyperbolicSpace {
    int dim;          // m, dimension of the quadric
    int index;        // t, index of the induced metric
    double curvature; // c < 0
    Vec signs;        // length m+1, entries +-1

    int ambient_dim() const { return dim + 1; }
    double quadric_value() const { return 1.0 / curvature; }
    std::string str() const;
};

PseudoHyperbolicSpace make_space(int dim, int index, double curvature);
PseudoHyperbolicSpace make_space_with_signs(double curvature, Vec signs);

double inner(const PseudoHyperbolicSpace& space, const Vec& x, const Vec& y);

/// |<p,p> - 1/c| membership defect of a would-be point of the quadric.
double membership_defect(const PseudoHyperbolicSpace& space, const Vec& p);
bool on_quadric(const PseudoHyperbolicSpace& space, const Vec& p, double tol = 1e-10);

/// Radial rescaling onto the quadric.  Counts an event in *reprojections
/// when the drift exceeded drift_tol.  Throws if p is null.
Vec reproject(const PseudoHyperbolicSpace& space, const Vec& p,
              long* reprojections = nullptr, double drift_tol = 1e-10);

/// Component of w tangent to the quadric at p (the position vector is normal).
Vec tangent_project(const PseudoHyperbolicSpace& space, const Vec& p, const Vec& w);

bool is_tangent(const PseudoHyperbolicSpace& space, const Vec& p, const Vec& v,
                double tol = 1e-10);

/// Geodesic through p with initial velocity v, closed form:
/// cosh/sinh for spacelike v, cos/sin for timelike v, affine for null v.
Vec geodesic(const PseudoHyperbolicSpace& space, const Vec& p, const Vec& v, double t);

struct OrthonormalizedFrame {
    std::vector<Vec> vectors;  // pairwise orthogonal, <u,u> = +-1
    Signature signature;       // of the spanned subspace
};

/// Indefinite Gram-Schmidt.  Pivots on the remaining vector of largest
/// |<u,u>| after projection; a best pivot below null_tol (relative to the
/// input scale) means the span is degenerate and is reported as an error.
OrthonormalizedFrame indefinite_gram_schmidt(const PseudoHyperbolicSpace& space,
                                             const std::vector<Vec>& vectors,
                                             double null_tol = 1e-9);

std::string point_to_json(const PseudoHyperbolicSpace& space, const Vec& p);
std::string frame_to_json(const PseudoHyperbolicSpace& space, const std::vector<Vec>& frame);

}  // namespace hopfsub
