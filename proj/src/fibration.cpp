#include "hopfsub/fibration.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hopfsub {
namespace {

// --- Hopf-construction coordinates: (x1,y1,...,xd,yd) -----------------------

AlgebraElement unpack_x(AlgebraName alg, const Vec& z) {
    const int d = algebra_tag(alg).dim;
    std::vector<double> c(d);
    for (int i = 0; i < d; ++i) c[i] = z[2 * i];
    return AlgebraElement{alg, std::move(c)};
}

AlgebraElement unpack_y(AlgebraName alg, const Vec& z) {
    const int d = algebra_tag(alg).dim;
    std::vector<double> c(d);
    for (int i = 0; i < d; ++i) c[i] = z[2 * i + 1];
    return AlgebraElement{alg, std::move(c)};
}

Vec norm_diag(AlgebraName alg) {
    const int d = algebra_tag(alg).dim;
    Vec sigma(d);
    for (int i = 0; i < d; ++i) sigma[i] = norm_form(basis_element(alg, i));
    return sigma;
}

// --- block coordinates for the quotient fibrations ---------------------------

struct BlockLayout {
    AlgebraName alg;
    int blocks;  // m + 1
    int d;       // block width
};

AlgebraElement block(const BlockLayout& lay, const Vec& z, int i) {
    std::vector<double> c(lay.d);
    for (int k = 0; k < lay.d; ++k) c[k] = z[i * lay.d + k];
    return AlgebraElement{lay.alg, std::move(c)};
}

void set_block(const BlockLayout& lay, Vec& z, int i, const AlgebraElement& v) {
    for (int k = 0; k < lay.d; ++k) z[i * lay.d + k] = v.coeffs[k];
}

Vec right_mul(const BlockLayout& lay, const Vec& z, const AlgebraElement& u) {
    Vec out(z.size());
    for (int i = 0; i < lay.blocks; ++i) set_block(lay, out, i, mul(block(lay, z, i), u));
    return out;
}

// exp of an imaginary element of an associative composition algebra;
// xi^2 = -N(xi) e0, so the series closes in cos/cosh form
AlgebraElement exp_imaginary(const AlgebraElement& xi) {
    const double lambda = norm_form(xi);
    AlgebraElement one = basis_element(xi.name, 0);
    if (std::abs(lambda) < 1e-14) return add(one, xi);
    if (lambda > 0.0) {
        const double s = std::sqrt(lambda);
        return add(scale(std::cos(s), one), scale(std::sin(s) / s, xi));
    }
    const double s = std::sqrt(-lambda);
    return add(scale(std::cosh(s), one), scale(std::sinh(s) / s, xi));
}

int timelike_units(AlgebraName alg, const std::vector<int>& units) {
    // a unit direction z e_u is timelike upstairs exactly when N(e_u) > 0
    int count = 0;
    for (int u : units)
        if (norm_form(basis_element(alg, u)) > 0.0) ++count;
    return count;
}

}  // namespace

// --- explicit evaluator -------------------------------------------------------

Vec Fibration::evaluate(const Vec& p) const {
    if (kind != TargetKind::Explicit) throw std::logic_error(id + " has no explicit evaluator");
    if (membership_defect(total, p) > 1e-8 * std::max(1.0, p.squaredNorm()))
        throw std::domain_error("point is off the domain quadric");
    const AlgebraElement x = unpack_x(algebra, p);
    const AlgebraElement y = unpack_y(algebra, p);
    const double nx = norm_form(x), ny = norm_form(y);
    const AlgebraElement w = mul(conj(x), y);
    Vec out(base.dim + 1);
    out[0] = variant == 1 ? 0.5 * (nx - ny) : 0.5 * (nx + ny);
    for (int i = 0; i < w.dim(); ++i) out[1 + i] = w.coeffs[i];
    return out;
}

Mat Fibration::differential(const Vec& p) const {
    if (kind != TargetKind::Explicit) throw std::logic_error(id + " has no explicit evaluator");
    const AlgebraElement x = unpack_x(algebra, p);
    const AlgebraElement y = unpack_y(algebra, p);
    const AlgebraElement cx = conj(x);
    const int d = algebra_tag(algebra).dim;
    Mat J(base.dim + 1, total.ambient_dim());
    // column for the x_i direction: (±<x,e_i>, conj(e_i) y)
    // column for the y_i direction: (±<y,e_i>, conj(x) e_i)
    for (int i = 0; i < d; ++i) {
        const AlgebraElement e = basis_element(algebra, i);
        const AlgebraElement wx = mul(conj(e), y);
        J(0, 2 * i) = inner(x, e);
        for (int k = 0; k < d; ++k) J(1 + k, 2 * i) = wx.coeffs[k];
        const AlgebraElement wy = mul(cx, e);
        J(0, 2 * i + 1) = (variant == 1 ? -1.0 : 1.0) * inner(y, e);
        for (int k = 0; k < d; ++k) J(1 + k, 2 * i + 1) = wy.coeffs[k];
    }
    return J;
}

// --- vertical / horizontal ----------------------------------------------------

std::vector<Vec> Fibration::vertical_frame(const Vec& p) const {
    std::vector<Vec> raw;
    if (kind == TargetKind::Explicit) {
        // ker(dphi_p); it lies inside T_pM automatically on the quadric
        Eigen::FullPivLU<Mat> lu(differential(p));
        lu.setThreshold(1e-9);
        const Mat K = lu.kernel();
        for (int j = 0; j < K.cols(); ++j) raw.push_back(K.col(j));
    } else {
        const BlockLayout lay{algebra, m + 1, algebra_tag(algebra).dim};
        for (int u : fibre_units) raw.push_back(right_mul(lay, p, basis_element(algebra, u)));
    }
    OrthonormalizedFrame frame;
    try {
        frame = indefinite_gram_schmidt(total, raw);
    } catch (const std::domain_error&) {
        throw std::domain_error(id + ": induced fibre metric is degenerate");
    }
    // composites keep the full orbit of the downstairs fibre group upstairs
    const int expect_dim =
        kind == TargetKind::Explicit ? fibre.dim : static_cast<int>(fibre_units.size());
    const int expect_index =
        kind == TargetKind::Explicit ? fibre.index : timelike_units(algebra, fibre_units);
    if (static_cast<int>(frame.vectors.size()) != expect_dim ||
        frame.signature.index != expect_index)
        throw std::domain_error(id + ": vertical space does not match the fibre model");
    return frame.vectors;
}

std::vector<Vec> Fibration::horizontal_frame(const Vec& p) const {
    const std::vector<Vec> vert = vertical_frame(p);
    const int n = total.ambient_dim();
    Mat rows(static_cast<int>(vert.size()) + 1, n);
    for (std::size_t k = 0; k < vert.size(); ++k)
        rows.row(static_cast<int>(k)) = (total.signs.array() * vert[k].array()).matrix().transpose();
    rows.row(static_cast<int>(vert.size())) =
        (total.signs.array() * p.array()).matrix().transpose();
    Eigen::FullPivLU<Mat> lu(rows);
    lu.setThreshold(1e-9);
    const Mat K = lu.kernel();
    std::vector<Vec> raw;
    for (int j = 0; j < K.cols(); ++j) raw.push_back(K.col(j));
    OrthonormalizedFrame frame = indefinite_gram_schmidt(total, raw);
    if (static_cast<int>(frame.vectors.size()) != base.dim ||
        frame.signature.index != base.index)
        throw std::domain_error(id + ": horizontal space does not match the base signature");
    return frame.vectors;
}

Vec Fibration::vertical_project(const std::vector<Vec>& vframe, const Vec& w) const {
    Vec out = Vec::Zero(w.size());
    for (const Vec& u : vframe) {
        const double eps = inner(total, u, u);
        out += (inner(total, u, w) / eps) * u;
    }
    return out;
}

Vec Fibration::vertical_project(const Vec& p, const Vec& w) const {
    return vertical_project(vertical_frame(p), w);
}

Vec Fibration::horizontal_project(const Vec& p, const Vec& w) const {
    return tangent_project(total, p, w) - vertical_project(p, w);
}

// --- fibres --------------------------------------------------------------------

bool Fibration::same_fibre(const Vec& p, const Vec& q, double tol) const {
    if (kind == TargetKind::Explicit) {
        const Vec a = evaluate(p), b = evaluate(q);
        return (a - b).norm() <= tol * (1.0 + a.norm());
    }
    const BlockLayout lay{algebra, m + 1, algebra_tag(algebra).dim};
    // q = p u for a unit u of the fibre group, solved from the best block
    int best = 0;
    double best_norm = 0.0;
    for (int i = 0; i < lay.blocks; ++i) {
        const double n = std::abs(norm_form(block(lay, p, i)));
        if (n > best_norm) {
            best_norm = n;
            best = i;
        }
    }
    if (best_norm < 1e-12) return false;
    const AlgebraElement pi = block(lay, p, best);
    const AlgebraElement u = scale(1.0 / norm_form(pi), mul(conj(pi), block(lay, q, best)));
    if (std::abs(norm_form(u) - 1.0) > 1e3 * tol) return false;
    if (algebra == AlgebraName::A && real_part(u) <= 0.0) return false;  // A_+ component
    // the fibre group is spanned by fibre_units; reject u outside it
    for (int k = 1; k < lay.d; ++k) {
        bool in_group = false;
        for (int fu : fibre_units) in_group = in_group || fu == k;
        if (!in_group && std::abs(u.coeffs[k]) > 1e3 * tol) return false;
    }
    return (right_mul(lay, p, u) - q).norm() <= tol * (1.0 + q.norm());
}

Vec Fibration::random_fibre_point(const Vec& p, std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    if (kind == TargetKind::Explicit) {
        const std::vector<Vec> vert = vertical_frame(p);
        Vec v = Vec::Zero(p.size());
        for (const Vec& u : vert) v += gauss(rng) * u;
        v /= v.norm();
        std::uniform_real_distribution<double> angle(-1.2, 1.2);
        return geodesic(total, p, v, angle(rng));
    }
    const BlockLayout lay{algebra, m + 1, algebra_tag(algebra).dim};
    std::vector<double> c(lay.d, 0.0);
    for (int u : fibre_units) c[u] = 0.7 * gauss(rng);
    return right_mul(lay, p, exp_imaginary(AlgebraElement{algebra, std::move(c)}));
}

Vec Fibration::basic_transport(const Vec& p, const Vec& X, const Vec& q) const {
    if (kind == TargetKind::Quotient) {
        const BlockLayout lay{algebra, m + 1, algebra_tag(algebra).dim};
        int best = 0;
        double best_norm = 0.0;
        for (int i = 0; i < lay.blocks; ++i) {
            const double n = std::abs(norm_form(block(lay, p, i)));
            if (n > best_norm) {
                best_norm = n;
                best = i;
            }
        }
        const AlgebraElement pi = block(lay, p, best);
        const AlgebraElement u = scale(1.0 / norm_form(pi), mul(conj(pi), block(lay, q, best)));
        if ((right_mul(lay, p, u) - q).norm() > 1e-7 * (1.0 + q.norm()))
            throw std::domain_error(id + ": transport target is not on the fibre");
        return right_mul(lay, X, u);
    }
    const Vec w = differential(p) * X;
    return horizontal_lift(q, BaseTangent{w, Vec()});
}

// --- lifts ----------------------------------------------------------------------

Vec Fibration::horizontal_lift(const Vec& p, const BaseTangent& w) const {
    if (kind == TargetKind::Explicit) {
        const std::vector<Vec> h = horizontal_frame(p);
        const Mat J = differential(p);
        Mat M(base.dim + 1, static_cast<int>(h.size()));
        for (std::size_t k = 0; k < h.size(); ++k) M.col(static_cast<int>(k)) = J * h[k];
        const Eigen::VectorXd c = M.colPivHouseholderQr().solve(w.vec);
        if ((M * c - w.vec).norm() > 1e-7 * (1.0 + w.vec.norm()))
            throw std::domain_error(id + ": tangent datum is not in the image of the differential");
        Vec out = Vec::Zero(p.size());
        for (std::size_t k = 0; k < h.size(); ++k) out += c[static_cast<int>(k)] * h[k];
        return out;
    }
    if (w.at.size() == 0) throw std::invalid_argument(id + ": quotient lift needs a marked point");
    return basic_transport(w.at, w.vec, p);
}

// --- sampling --------------------------------------------------------------------

Vec Fibration::random_point(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = total.ambient_dim();
    // insisting on a solidly negative square keeps the rescaled coordinates
    // moderate, which the finite-difference kernels depend on
    const double floor = 0.12 * n;
    for (int attempt = 0; attempt < 4096; ++attempt) {
        Vec z(n);
        for (int i = 0; i < n; ++i) z[i] = gauss(rng);
        const double q = inner(total, z, z);
        if (q < -floor) return z * std::sqrt(total.quadric_value() / q);
    }
    throw std::runtime_error("random point sampling failed");
}

Vec Fibration::random_tangent(const Vec& p, std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec w(p.size());
    for (int i = 0; i < p.size(); ++i) w[i] = gauss(rng);
    return tangent_project(total, p, w);
}

Vec Fibration::random_horizontal(const Vec& p, std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::vector<Vec> h = horizontal_frame(p);
    Vec out = Vec::Zero(p.size());
    for (const Vec& u : h) out += gauss(rng) * u;
    return out;
}

Vec Fibration::random_vertical(const Vec& p, std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::vector<Vec> v = vertical_frame(p);
    Vec out = Vec::Zero(p.size());
    for (const Vec& u : v) out += gauss(rng) * u;
    return out;
}

Vec Fibration::random_unit_horizontal(const Vec& p, int causal_sign, std::mt19937_64& rng) const {
    if (causal_sign > 0 && base.index == base.dim)
        throw std::domain_error(id + ": horizontal space has no spacelike vectors");
    if (causal_sign < 0 && base.index == 0)
        throw std::domain_error(id + ": horizontal space has no timelike vectors");
    for (int attempt = 0; attempt < 4096; ++attempt) {
        const Vec X = random_horizontal(p, rng);
        const double g = inner(total, X, X);
        if (causal_sign * g > 1e-3 * X.squaredNorm()) return X / std::sqrt(std::abs(g));
    }
    throw std::runtime_error(id + ": causal-type sampling failed");
}

std::string Fibration::to_json() const {
    const int a = total.dim - static_cast<int>(total_units.size());
    const int l = total.index - timelike_units(algebra, total_units);
    std::ostringstream os;
    os << "{\"id\":\"" << id << "\",\"total\":{\"dim\":" << a << ",\"index\":" << l << "}"
       << ",\"base\":{\"dim\":" << base.dim << ",\"index\":" << base.index
       << ",\"curvature\":" << base.curvature << "}"
       << ",\"fibre\":{\"dim\":" << fibre.dim << ",\"index\":" << fibre.index
       << ",\"model\":\"" << fibre.model << "\"}"
       << ",\"evaluator\":\"" << (kind == TargetKind::Explicit ? "explicit" : "quotient") << "\"}";
    return os.str();
}

// --- constructors ------------------------------------------------------------------

Fibration hopf_construction(AlgebraName alg, int variant) {
    const int d = algebra_tag(alg).dim;
    const Vec sigma = norm_diag(alg);
    const bool split = sigma.minCoeff() < 0.0;
    if (variant == 2 && split)
        // the restriction of variant 2 to the split quadric reproduces variant 1
        throw std::invalid_argument("variant 2 is catalogued for the division algebras only");
    if (variant != 1 && variant != 2) throw std::invalid_argument("variant must be 1 or 2");

    Fibration f;
    f.kind = TargetKind::Explicit;
    f.algebra = alg;
    f.variant = variant;

    // domain: the ambient form is minus the defining quadratic of the domain,
    // carried on the interleaved identification (x1,y1,...,xd,yd)
    Vec eta(2 * d);
    for (int i = 0; i < d; ++i) {
        eta[2 * i] = -sigma[i];
        eta[2 * i + 1] = (variant == 1 ? -1.0 : 1.0) * sigma[i];
    }
    f.total = make_space_with_signs(-1.0, eta);

    Vec eta_b(d + 1);
    eta_b[0] = -1.0;
    for (int i = 0; i < d; ++i) eta_b[1 + i] = (variant == 1 ? -1.0 : 1.0) * sigma[i];
    f.base_space = make_space_with_signs(-4.0, eta_b);
    f.base = BaseDescriptor{d, f.base_space->index, -4.0};

    const int rp = f.total.index - f.base.index;
    std::ostringstream model;
    model << "H(" << d - 1 << "," << rp << ")";
    f.fibre = FibreModel{d - 1, rp, model.str()};
    return f;
}

namespace {

Fibration make_quotient(const std::string& id, AlgebraName alg, int m, int t,
                        std::vector<int> fibre_units, std::vector<int> total_units,
                        FibreModel fb) {
    const int d = algebra_tag(alg).dim;
    const Vec sigma = norm_diag(alg);
    const bool split = sigma.minCoeff() < 0.0;
    Vec eta(d * (m + 1));
    for (int i = 0; i <= m; ++i)
        for (int k = 0; k < d; ++k)
            eta[i * d + k] = split ? -sigma[k] : (i <= t ? -1.0 : 1.0);
    Fibration f;
    f.id = id;
    f.kind = TargetKind::Quotient;
    f.algebra = alg;
    f.m = m;
    f.t = t;
    f.total = make_space_with_signs(-1.0, std::move(eta));
    f.fibre_units = std::move(fibre_units);
    f.total_units = std::move(total_units);
    f.fibre = std::move(fb);
    return f;
}

}  // namespace

Fibration make_fibration(const std::string& id, int m, int t) {
    if (m < 1 || t < 0) throw std::invalid_argument("family parameters need m >= 1, t >= 0");
    if (id == "pi1" || id == "pi2" || id == "pi3" || id == "pi4" || id == "pi5" ||
        id == "pi6" || id == "pi7" || id == "pi8" || id == "pi9") {
        static const std::map<std::string, std::pair<AlgebraName, int>> table = {
            {"pi1", {AlgebraName::C, 1}},      {"pi2", {AlgebraName::H, 1}},
            {"pi3", {AlgebraName::O, 1}},      {"pi4", {AlgebraName::C, 2}},
            {"pi5", {AlgebraName::H, 2}},      {"pi6", {AlgebraName::O, 2}},
            {"pi7", {AlgebraName::A, 1}},      {"pi8", {AlgebraName::B, 1}},
            {"pi9", {AlgebraName::Oprime, 1}},
        };
        const auto [alg, variant] = table.at(id);
        Fibration f = hopf_construction(alg, variant);
        f.id = id;
        return f;
    }
    if (t > m) throw std::invalid_argument("family parameters need t <= m");
    if (id == "pi_C") {
        Fibration f = make_quotient(id, AlgebraName::C, m, t, {1}, {},
                                    FibreModel{1, 1, "H(1,1)"});
        f.base = BaseDescriptor{2 * m, 2 * t, -4.0};
        return f;
    }
    if (id == "pi_A") {
        Fibration f = make_quotient(id, AlgebraName::A, m, 0, {1}, {},
                                    FibreModel{1, 0, "H(1,0)"});
        f.base = BaseDescriptor{2 * m, m, -4.0};
        return f;
    }
    if (id == "pi_H") {
        Fibration f = make_quotient(id, AlgebraName::H, m, t, {1, 2, 3}, {},
                                    FibreModel{3, 3, "H(3,3)"});
        f.base = BaseDescriptor{4 * m, 4 * t, -4.0};
        return f;
    }
    if (id == "pi_B") {
        Fibration f = make_quotient(id, AlgebraName::B, m, 0, {1, 2, 3}, {},
                                    FibreModel{3, 1, "H(3,1)"});
        f.base = BaseDescriptor{4 * m, 2 * m, -4.0};
        return f;
    }
    if (id == "pi_CH") {
        Fibration f = make_quotient(id, AlgebraName::H, m, t, {1, 2, 3}, {1},
                                    FibreModel{2, 2, "CH(1,1)"});
        f.base = BaseDescriptor{4 * m, 4 * t, -4.0};
        return f;
    }
    if (id == "pi_CB") {
        Fibration f = make_quotient(id, AlgebraName::B, m, 0, {1, 2, 3}, {1},
                                    FibreModel{2, 0, "CH(1,0)"});
        f.base = BaseDescriptor{4 * m, 2 * m, -4.0};
        return f;
    }
    if (id == "pi_AB") {
        Fibration f = make_quotient(id, AlgebraName::B, m, 0, {1, 2, 3}, {2},
                                    FibreModel{2, 1, "AP(1)"});
        f.base = BaseDescriptor{4 * m, 2 * m, -4.0};
        return f;
    }
    throw std::invalid_argument("unknown fibration id: " + id);
}

const std::vector<std::string>& fibration_ids() {
    static const std::vector<std::string> ids = {
        "pi_C", "pi_A", "pi_H", "pi_B", "pi1", "pi2", "pi3", "pi4", "pi5",
        "pi6",  "pi7",  "pi8",  "pi9",  "pi_CH", "pi_CB", "pi_AB"};
    return ids;
}

Fibration compose(const Fibration& outer, const Fibration& inner) {
    if (inner.kind != TargetKind::Quotient || outer.kind != TargetKind::Quotient)
        throw std::invalid_argument("compose needs quotient data on both sides");
    if (!inner.has_quadric_total())
        throw std::invalid_argument("inner total must be a pseudo-hyperbolic quadric");
    if (outer.total_units.empty())
        throw std::invalid_argument("outer total must be a proper quotient");
    if (inner.total.ambient_dim() != outer.total.ambient_dim() ||
        inner.total.index != outer.total.index)
        throw std::invalid_argument("incompatible chaining: upstairs spaces differ");
    // base of inner = total of outer, compared as quotient data
    const int tot_dim = outer.total.dim - static_cast<int>(outer.total_units.size());
    const int tot_index = outer.total.index - timelike_units(outer.algebra, outer.total_units);
    if (inner.base.dim != tot_dim || inner.base.index != tot_index ||
        inner.fibre.dim != static_cast<int>(outer.total_units.size()))
        throw std::invalid_argument("incompatible chaining: inner base is not the outer total");
    // the composite orbit is the full outer unit group, back on the quadric
    Fibration f = make_fibration(outer.algebra == AlgebraName::H ? "pi_H" : "pi_B",
                                 outer.m, outer.t);
    f.id = outer.id + "*" + inner.id;
    return f;
}

// --- pi9 literal polynomial ----------------------------------------------------

Vec pi9_polynomial(const Vec& p) {
    const double x[8] = {p[0], p[2], p[4], p[6], p[8], p[10], p[12], p[14]};
    const double y[8] = {p[1], p[3], p[5], p[7], p[9], p[11], p[13], p[15]};
    Vec out(9);
    out[0] = 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] - x[4] * x[4] -
                    x[5] * x[5] - x[6] * x[6] - x[7] * x[7] - y[0] * y[0] - y[1] * y[1] -
                    y[2] * y[2] - y[3] * y[3] + y[4] * y[4] + y[5] * y[5] + y[6] * y[6] +
                    y[7] * y[7]);
    out[1] = x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3] - x[4] * y[4] -
             x[5] * y[5] - x[6] * y[6] - x[7] * y[7];
    out[2] = -x[1] * y[0] + x[0] * y[1] + x[3] * y[2] - x[2] * y[3] - x[5] * y[4] +
             x[4] * y[5] + x[7] * y[6] - x[6] * y[7];
    out[3] = -x[2] * y[0] - x[3] * y[1] + x[0] * y[2] + x[1] * y[3] - x[6] * y[4] -
             x[7] * y[5] + x[4] * y[6] + x[5] * y[7];
    out[4] = -x[3] * y[0] + x[2] * y[1] - x[1] * y[2] + x[0] * y[3] - x[7] * y[4] +
             x[6] * y[5] - x[5] * y[6] + x[4] * y[7];
    out[5] = -x[4] * y[0] - x[5] * y[1] - x[6] * y[2] - x[7] * y[3] + x[0] * y[4] +
             x[1] * y[5] + x[2] * y[6] + x[3] * y[7];
    out[6] = -x[5] * y[0] + x[4] * y[1] - x[7] * y[2] + x[6] * y[3] - x[1] * y[4] +
             x[0] * y[5] - x[3] * y[6] + x[2] * y[7];
    out[7] = -x[6] * y[0] + x[7] * y[1] + x[4] * y[2] - x[5] * y[3] - x[2] * y[4] +
             x[3] * y[5] + x[0] * y[6] - x[1] * y[7];
    out[8] = -x[7] * y[0] - x[6] * y[1] + x[5] * y[2] + x[4] * y[3] - x[3] * y[4] -
             x[2] * y[5] + x[1] * y[6] + x[0] * y[7];
    return out;
}

}  // namespace hopfsub
