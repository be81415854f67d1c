#include "hopfsub/spaces.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hopfsub {

std::string PseudoHyperbolicSpace::str() const {
    std::ostringstream os;
    os << "H(" << dim << "," << index << ")(" << curvature << ")";
    return os.str();
}

PseudoHyperbolicSpace make_space(int dim, int index, double curvature) {
    if (curvature >= 0.0) throw std::invalid_argument("curvature must be negative");
    if (index < 0 || index > dim) throw std::invalid_argument("index out of range");
    Vec signs = Vec::Ones(dim + 1);
    for (int i = 0; i <= index; ++i) signs[i] = -1.0;
    return PseudoHyperbolicSpace{dim, index, curvature, std::move(signs)};
}

PseudoHyperbolicSpace make_space_with_signs(double curvature, Vec signs) {
    if (curvature >= 0.0) throw std::invalid_argument("curvature must be negative");
    int negatives = 0;
    for (int i = 0; i < signs.size(); ++i) {
        if (signs[i] != 1.0 && signs[i] != -1.0)
            throw std::invalid_argument("sign entries must be +-1");
        if (signs[i] < 0.0) ++negatives;
    }
    const int dim = static_cast<int>(signs.size()) - 1;
    // the quadric value 1/c is negative, so the normal is timelike and the
    // induced index is (number of negatives) - 1
    return PseudoHyperbolicSpace{dim, negatives - 1, curvature, std::move(signs)};
}

double inner(const PseudoHyperbolicSpace& space, const Vec& x, const Vec& y) {
    if (x.size() != y.size() || x.size() != space.signs.size())
        throw std::invalid_argument("vector length mismatch");
    return (space.signs.array() * x.array() * y.array()).sum();
}

double membership_defect(const PseudoHyperbolicSpace& space, const Vec& p) {
    return std::abs(inner(space, p, p) - space.quadric_value());
}

bool on_quadric(const PseudoHyperbolicSpace& space, const Vec& p, double tol) {
    return membership_defect(space, p) <= tol;
}

Vec reproject(const PseudoHyperbolicSpace& space, const Vec& p, long* reprojections,
              double drift_tol) {
    const double q = inner(space, p, p);
    const double target = space.quadric_value();
    if (q / target <= 0.0) throw std::domain_error("cannot reproject a null or wrong-sign point");
    if (std::abs(q - target) <= drift_tol) return p;
    if (reprojections) ++*reprojections;
    return p * std::sqrt(target / q);
}

Vec tangent_project(const PseudoHyperbolicSpace& space, const Vec& p, const Vec& w) {
    return w - inner(space, p, w) / inner(space, p, p) * p;
}

bool is_tangent(const PseudoHyperbolicSpace& space, const Vec& p, const Vec& v, double tol) {
    return std::abs(inner(space, p, v)) <= tol * std::max(1.0, v.norm() * p.norm());
}

Vec geodesic(const PseudoHyperbolicSpace& space, const Vec& p, const Vec& v, double t) {
    if (!is_tangent(space, p, v, 1e-8))
        throw std::invalid_argument("geodesic velocity is not tangent to the quadric");
    const double vv = inner(space, v, v);
    const double c = space.curvature;
    const double w = -c * vv;  // sign decides the trigonometry
    const double scale = std::sqrt(std::abs(w));
    if (std::abs(w) < 1e-14 * std::max(1.0, v.squaredNorm())) return p + t * v;
    if (w > 0.0) return std::cosh(scale * t) * p + (std::sinh(scale * t) / scale) * v;
    return std::cos(scale * t) * p + (std::sin(scale * t) / scale) * v;
}

OrthonormalizedFrame indefinite_gram_schmidt(const PseudoHyperbolicSpace& space,
                                             const std::vector<Vec>& vectors,
                                             double null_tol) {
    std::vector<Vec> work = vectors;
    double scale = 0.0;
    for (const Vec& v : work) scale = std::max(scale, v.squaredNorm());
    if (scale == 0.0) throw std::invalid_argument("cannot orthonormalize the zero system");

    OrthonormalizedFrame out;
    out.signature = {0, 0};
    std::vector<bool> used(work.size(), false);
    for (std::size_t step = 0; step < work.size(); ++step) {
        // pivot: remaining vector of largest |<u,u>| after projection
        int best = -1;
        double best_norm = 0.0;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (used[i]) continue;
            const double n = std::abs(inner(space, work[i], work[i]));
            // earlier index wins near-ties, so the pivot order is stable
            if (best < 0 || n > best_norm * (1.0 + 1e-10)) {
                best_norm = n;
                best = static_cast<int>(i);
            }
        }
        if (best < 0 || best_norm <= null_tol * scale) {
            // every remaining vector is null; a sum or difference of two of
            // them is non-null exactly when the residual span is non-degenerate
            Vec combo;
            best = -1;
            best_norm = 0.0;
            for (std::size_t i = 0; i < work.size() && best < 0; ++i) {
                if (used[i]) continue;
                for (std::size_t j = i + 1; j < work.size(); ++j) {
                    if (used[j]) continue;
                    for (double sgn : {1.0, -1.0}) {
                        Vec c = work[i] + sgn * work[j];
                        const double n = std::abs(inner(space, c, c));
                        if (n > best_norm) {
                            best_norm = n;
                            best = static_cast<int>(i);
                            combo = std::move(c);
                        }
                    }
                }
            }
            if (best < 0 || best_norm <= null_tol * scale) {
                // remaining vectors may just be the linear-dependence residue
                bool residue = true;
                for (std::size_t i = 0; i < work.size(); ++i)
                    if (!used[i] && work[i].squaredNorm() > null_tol * scale) residue = false;
                if (residue) break;
                throw std::domain_error("degenerate subspace: all pivot candidates are null");
            }
            work[best] = std::move(combo);
        }
        const double nn = inner(space, work[best], work[best]);
        Vec u = work[best] / std::sqrt(std::abs(nn));
        const int eps = nn > 0.0 ? 1 : -1;
        used[best] = true;
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (used[i]) continue;
            work[i] -= eps * inner(space, u, work[i]) * u;
        }
        out.vectors.push_back(std::move(u));
        out.signature.dim += 1;
        if (eps < 0) out.signature.index += 1;
    }
    return out;
}

std::string point_to_json(const PseudoHyperbolicSpace& space, const Vec& p) {
    std::ostringstream os;
    os << "{\"coords\":[";
    for (int i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << "],\"space\":\"" << space.str() << "\"}";
    return os.str();
}

std::string frame_to_json(const PseudoHyperbolicSpace& space, const std::vector<Vec>& frame) {
    std::ostringstream os;
    os << "{\"coords\":[";
    for (std::size_t k = 0; k < frame.size(); ++k) {
        os << (k ? ",[" : "[");
        for (int i = 0; i < frame[k].size(); ++i) os << (i ? "," : "") << frame[k][i];
        os << "]";
    }
    os << "],\"space\":\"" << space.str() << "\"}";
    return os.str();
}

}  // namespace hopfsub
