#include "hopfsub/verify.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hopfsub/algebra.hpp"
#include "hopfsub/classify.hpp"

namespace hopfsub {
namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t salted(std::uint64_t seed, const std::string& salt) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : salt) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h ^ seed;
}

}  // namespace

Tolerances::Tolerances() {
    values_ = {
        {"pi9_conformance", 1e-12},
        {"target_membership", 1e-10},
        {"membership_construct", 1e-12},
        {"membership_transport", 1e-10},
        {"submersion_isometry", 1e-10},
        {"vh_orthogonality", 1e-10},
        {"lift_push", 1e-10},
        {"null_push", 1e-10},
        {"metric_push_gram", 1e-8},
        {"fibre_geodesic_orbit", 1e-8},
        {"orbit_membership", 1e-9},
        {"oneill", 1e-6},
        {"ranjan", 1e-6},
        {"axaxv", 1e-6},
        {"a_alternating", 1e-7},
        {"a_skew", 1e-7},
        {"a_injectivity_floor", 1e-6},
        {"t_tensor", 1e-6},
        {"jacobi_eig", 1e-6},
        {"jacobi_ratio", 1e-5},
        {"clifford", 1e-6},
        {"special_basis_gram", 1e-8},
        {"special_basis_all", 1e-6},
        {"basic_push", 1e-7},
        {"holonomy_gram", 1e-6},
        {"lift_retrace", 1e-7},
        {"lift_drift", 1e-6},
        {"rank_threshold", 1e-8},
        {"metric_compat", 1e-6},
        {"expensive", 1e-4},
        {"algebra_composition", 1e-10},
        {"algebra_alternative", 1e-10},
        {"algebra_conjugation", 1e-12},
        {"gs_null", 1e-9},
    };
}

double Tolerances::get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw std::invalid_argument("unknown tolerance: " + name);
    return it->second;
}

void Tolerances::set(const std::string& name, double value) {
    if (value <= 0.0) throw std::invalid_argument("tolerances must be positive");
    if (!values_.count(name)) throw std::invalid_argument("unknown tolerance: " + name);
    values_[name] = value;
}

Tolerances tolerances_from(const RunConfig& config) {
    Tolerances tol;
    for (const auto& [name, value] : config.tolerance_overrides) tol.set(name, value);
    return tol;
}

// --- membership / evaluator checks ------------------------------------------

std::vector<IdentityResult> membership_checks(const Fibration& f, int samples,
                                              std::uint64_t seed, const Tolerances& tol) {
    std::mt19937_64 rng(salted(seed, f.id + ":membership"));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto& T = f.total;
    const bool is_explicit = f.kind == TargetKind::Explicit;
    std::vector<IdentityResult> out;

    if (is_explicit) {
        const auto& B = *f.base_space;
        ResidualTracker memb("target_membership", "images satisfy the curvature -4 quadric",
                             tol.get("target_membership"));
        ResidualTracker iso("submersion_isometry",
                            "pushforward preserves horizontal scalar products",
                            tol.get("submersion_isometry"));
        ResidualTracker rank("rank_constancy", "differential rank equals the base dimension",
                             0.5);
        ResidualTracker euler("differential_euler", "quadratic homogeneity d(phi)_p(p) = 2 phi(p)",
                              tol.get("target_membership"));
        ResidualTracker lift("lift_push", "pushforward of a lift returns the base datum",
                             tol.get("lift_push"));
        ResidualTracker nullp("null_push", "null horizontal vectors push to null vectors",
                              tol.get("null_push"));
        for (int it = 0; it < samples; ++it) {
            const Vec p = f.random_point(rng);
            const Vec img = f.evaluate(p);
            memb.record(membership_defect(B, img));

            const Mat J = f.differential(p);
            euler.record((J * p - 2.0 * img).norm() / (1.0 + img.norm()));

            if (it % 8 == 0) {  // frame-level checks on a subset
                const std::vector<Vec> h = f.horizontal_frame(p);
                const Vec X = f.random_horizontal(p, rng);
                const Vec Y = f.random_horizontal(p, rng);
                iso.record(std::abs(inner(B, J * X, J * Y) - inner(T, X, Y)) /
                           (1.0 + X.norm() * Y.norm()));

                // rank of the differential restricted to the tangent space
                Mat M(f.base.dim + 1, T.ambient_dim() - 1);
                int col = 0;
                for (const Vec& u : h) M.col(col++) = J * u;
                for (const Vec& v : f.vertical_frame(p)) M.col(col++) = J * v;
                Eigen::JacobiSVD<Mat> svd(M);
                const double cutoff = tol.get("rank_threshold") * svd.singularValues().maxCoeff();
                int rk = 0;
                for (int i = 0; i < svd.singularValues().size(); ++i)
                    if (svd.singularValues()[i] > cutoff) ++rk;
                rank.record(rk == f.base.dim ? 0.0 : 1.0);

                Vec wp(f.base.dim + 1);
                for (int i = 0; i <= f.base.dim; ++i) wp[i] = gauss(rng);
                wp = tangent_project(B, img, wp);
                const Vec L = f.horizontal_lift(p, BaseTangent{wp, Vec()});
                lift.record((J * L - wp).norm() / (1.0 + wp.norm()));

                if (f.base.index > 0 && f.base.index < f.base.dim) {
                    const Vec u = f.random_unit_horizontal(p, +1, rng);
                    Vec v = f.random_unit_horizontal(p, -1, rng);
                    v -= inner(T, v, u) * u;  // timelike part orthogonal to u
                    v /= std::sqrt(-inner(T, v, v));
                    const Vec N = u + v;  // null by construction
                    nullp.record(std::abs(inner(B, J * N, J * N)) / (1.0 + N.squaredNorm()));
                }
            }
        }
        out.push_back(memb.result());
        out.push_back(iso.result());
        out.push_back(rank.result());
        out.push_back(euler.result());
        out.push_back(lift.result());
        if (f.base.index > 0 && f.base.index < f.base.dim) out.push_back(nullp.result());
    }

    // fibre geodesics stay inside the fibre; the sweep covers [-3, 2pi] so the
    // non-compact para fibres get a symmetric parameter range
    {
        ResidualTracker orbit("fibre_geodesic_orbit",
                              "fibre geodesics stay in the fibre over t in [-3, 2pi]",
                              0.5);
        std::uniform_real_distribution<double> tdist(-3.0, 2.0 * M_PI);
        const int count = std::max(8, samples / 4);
        for (int it = 0; it < count; ++it) {
            const Vec p = f.random_point(rng);
            Vec v = f.random_vertical(p, rng);
            v /= v.norm();
            const Vec q = geodesic(T, p, v, tdist(rng));
            orbit.record(f.same_fibre(p, q, tol.get("fibre_geodesic_orbit")) ? 0.0 : 1.0);
        }
        out.push_back(orbit.result());
    }

    // vertical-horizontal orthogonality and the fibre-signature audit
    {
        ResidualTracker vh("vh_orthogonality", "vertical and horizontal frames are g-orthogonal",
                           tol.get("vh_orthogonality"));
        ResidualTracker sig("fibre_signature", "vertical signature matches the fibre model", 0.5);
        const int count = std::max(4, samples / 16);
        for (int it = 0; it < count; ++it) {
            const Vec p = f.random_point(rng);
            const std::vector<Vec> v = f.vertical_frame(p);
            const std::vector<Vec> h = f.horizontal_frame(p);
            double worst = 0.0;
            for (const Vec& a : v)
                for (const Vec& b : h) worst = std::max(worst, std::abs(inner(T, a, b)));
            vh.record(worst);
            int timelike = 0;
            for (const Vec& a : v)
                if (inner(T, a, a) < 0) ++timelike;
            const int expect = f.has_quadric_total() ? f.fibre.index : -1;
            sig.record(expect < 0 || timelike == expect ? 0.0 : 1.0);
        }
        out.push_back(vh.result());
        out.push_back(sig.result());
    }

    // pushforward metric is well defined: transporting a horizontal frame along
    // the fibre preserves its Gram matrix
    {
        ResidualTracker gram("metric_push_gram",
                             "horizontal Gram matrices agree across each fibre",
                             tol.get("metric_push_gram"));
        const int count = std::max(4, samples / 16);
        for (int it = 0; it < count; ++it) {
            const Vec p = f.random_point(rng);
            const Vec q = f.random_fibre_point(p, rng);
            const std::vector<Vec> h = f.horizontal_frame(p);
            std::vector<Vec> hq;
            for (const Vec& u : h) hq.push_back(f.basic_transport(p, u, q));
            double worst = 0.0;
            for (std::size_t i = 0; i < h.size(); ++i)
                for (std::size_t j = 0; j < h.size(); ++j)
                    worst = std::max(worst, std::abs(inner(T, h[i], h[j]) -
                                                     inner(T, hq[i], hq[j])));
            gram.record(worst);
        }
        out.push_back(gram.result());
    }

    // transport between fibres along a horizontal geodesic is an isometry
    {
        ResidualTracker iso("transport_isometry",
                            "fibre transport along horizontal geodesics preserves the fibre metric",
                            tol.get("holonomy_gram"));
        const int count = 3;
        const double delta = 1e-4;
        for (int it = 0; it < count; ++it) {
            const Vec p = f.random_point(rng);
            const Vec X = f.random_unit_horizontal(p, f.base.index < f.base.dim ? +1 : -1, rng);
            const std::vector<Vec> v = f.vertical_frame(p);
            auto transport = [&](const Vec& z) {
                return geodesic(T, z, f.basic_transport(p, X, z), 0.8);
            };
            std::vector<Vec> dtau;
            for (const Vec& u : v) {
                const Vec plus = transport(geodesic(T, p, u, delta));
                const Vec minus = transport(geodesic(T, p, u, -delta));
                dtau.push_back((plus - minus) / (2.0 * delta));
            }
            double worst = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j)
                    worst = std::max(worst, std::abs(inner(T, dtau[i], dtau[j]) -
                                                     inner(T, v[i], v[j])));
            iso.record(worst);
        }
        out.push_back(iso.result());
    }

    // holonomy of a closed base loop, explicit targets
    if (is_explicit) {
        const auto& B = *f.base_space;
        ResidualTracker hol("holonomy_isometry", "closed-loop holonomy preserves the fibre metric",
                            tol.get("holonomy_gram"));
        ResidualTracker ret("lift_retrace", "projection of the lift retraces the base loop",
                            tol.get("lift_retrace"));
        long reprojections = 0;
        const Vec p0 = f.random_point(rng);
        const Vec b0 = f.evaluate(p0);
        Vec u(B.dim + 1), w(B.dim + 1);
        for (int i = 0; i <= B.dim; ++i) {
            u[i] = gauss(rng);
            w[i] = gauss(rng);
        }
        OrthonormalizedFrame uw = indefinite_gram_schmidt(
            B, {tangent_project(B, b0, u), tangent_project(B, b0, w)});
        // bounded loop directions keep the integrator well conditioned when
        // the anchor frame sits near the null cone
        const Vec du = uw.vectors[0] / std::max(1.0, uw.vectors[0].norm());
        const Vec dw = uw.vectors[1] / std::max(1.0, uw.vectors[1].norm());
        const double amp = 0.1;
        auto loop = [&](double th) {
            Vec c = b0 + amp * std::sin(th) * du + amp * (1.0 - std::cos(th)) * dw;
            return reproject(B, c, nullptr, 0.0);
        };
        const int steps = 500;
        auto lift_from = [&](const Vec& z) {
            LiftedCurve curve = horizontal_lift_curve(f, loop, 0.0, 2.0 * M_PI, steps, z);
            reprojections += curve.reprojections;
            double worst = 0.0;
            for (std::size_t i = 0; i < curve.points.size(); i += 25)
                worst = std::max(worst,
                                 (f.evaluate(curve.points[i]) - loop(curve.times[i])).norm());
            ret.record(worst);
            return curve.points.back();
        };
        const Vec end0 = lift_from(p0);
        const std::vector<Vec> v = f.vertical_frame(p0);
        const double delta = 1e-4;
        std::vector<Vec> dtau;
        for (const Vec& vi : v) {
            const Vec plus = lift_from(geodesic(T, p0, vi, delta));
            const Vec minus = lift_from(geodesic(T, p0, vi, -delta));
            dtau.push_back((plus - minus) / (2.0 * delta));
        }
        double worst = f.same_fibre(p0, end0, tol.get("orbit_membership")) ? 0.0 : 1.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                worst = std::max(worst, std::abs(inner(T, dtau[i], dtau[j]) -
                                                 inner(T, v[i], v[j])));
        hol.record(worst);
        IdentityResult hres = hol.result(reprojections);
        out.push_back(hres);
        out.push_back(ret.result(reprojections));
    }

    if (f.id == "pi9") out.push_back(pi9_conformance(std::max(samples, 1000), seed, tol));
    return out;
}

std::vector<IdentityResult> composite_checks(const Fibration& f, int samples,
                                             std::uint64_t seed, const Tolerances& tol) {
    std::mt19937_64 rng(salted(seed, f.id + ":composite"));
    std::vector<IdentityResult> out;

    Fibration inner = f.id == "pi_AB" ? make_fibration("pi_A", 2 * f.m + 1, 0)
                                      : make_fibration("pi_C", 2 * f.m + 1,
                                                       f.id == "pi_CH" ? 2 * f.t + 1 : f.m);
    const Fibration comp = compose(f, inner);
    const Fibration ref =
        make_fibration(f.algebra == AlgebraName::H ? "pi_H" : "pi_B", f.m, f.t);

    ResidualTracker add("fibre_additivity", "fibre dimensions add under composition", 0.5);
    add.record(comp.fibre.dim == inner.fibre.dim + f.fibre.dim ? 0.0 : 1.0);
    add.record(comp.base.dim == f.base.dim && comp.base.index == f.base.index ? 0.0 : 1.0);
    out.push_back(add.result());

    ResidualTracker orbit("orbit_equality",
                          "the composite reproduces the one-step fibration on orbits", 0.5);
    const int count = std::max(16, samples / 8);
    for (int it = 0; it < count; ++it) {
        const Vec p = ref.random_point(rng);
        const Vec q = ref.random_fibre_point(p, rng);
        const bool same = comp.same_fibre(p, q, tol.get("orbit_membership"));
        const Vec other = ref.random_point(rng);
        const bool diff = comp.same_fibre(p, other, tol.get("orbit_membership"));
        orbit.record(same && !diff ? 0.0 : 1.0);
    }
    out.push_back(orbit.result());
    return out;
}

std::vector<IdentityResult> algebra_checks(int samples, std::uint64_t seed,
                                           const Tolerances& tol) {
    std::mt19937_64 rng(salted(seed, "algebra"));
    std::normal_distribution<double> gauss(0.0, 1.0);

    ResidualTracker comp("composition", "N(xy) = N(x) N(y)", tol.get("algebra_composition"));
    ResidualTracker alt("alternative", "x(xy) = (xx)y and (yx)x = y(xx)",
                        tol.get("algebra_alternative"));
    ResidualTracker conj_anti("conjugation", "conj(xy) = conj(y) conj(x)",
                              tol.get("algebra_conjugation"));
    ResidualTracker assoc("associativity_pattern",
                          "C, A, H, B associate on basis triples; O, O' do not", 0.5);

    for (AlgebraName name : {AlgebraName::C, AlgebraName::A, AlgebraName::H, AlgebraName::B,
                             AlgebraName::O, AlgebraName::Oprime}) {
        const int d = algebra_tag(name).dim;
        auto random_el = [&]() {
            std::vector<double> c(d);
            for (double& v : c) v = gauss(rng);
            return AlgebraElement{name, std::move(c)};
        };
        for (int it = 0; it < samples; ++it) {
            const AlgebraElement x = random_el();
            const AlgebraElement y = random_el();
            const AlgebraElement xy = mul(x, y);
            comp.record(std::abs(norm_form(xy) - norm_form(x) * norm_form(y)) /
                        (1.0 + std::abs(norm_form(x) * norm_form(y))));
            const AlgebraElement lhs1 = mul(x, xy);
            const AlgebraElement rhs1 = mul(mul(x, x), y);
            const AlgebraElement lhs2 = mul(mul(y, x), x);
            const AlgebraElement rhs2 = mul(y, mul(x, x));
            double worst = 0.0;
            for (int i = 0; i < d; ++i) {
                worst = std::max(worst, std::abs(lhs1.coeffs[i] - rhs1.coeffs[i]));
                worst = std::max(worst, std::abs(lhs2.coeffs[i] - rhs2.coeffs[i]));
            }
            const double scale = 1.0 + norm_form(add(x, y)) * norm_form(add(x, y));
            alt.record(worst / scale);
            const AlgebraElement cxy = conj(xy);
            const AlgebraElement yx = mul(conj(y), conj(x));
            double cworst = 0.0;
            for (int i = 0; i < d; ++i)
                cworst = std::max(cworst, std::abs(cxy.coeffs[i] - yx.coeffs[i]));
            conj_anti.record(cworst / scale);
        }
        // exact associativity scan over basis triples
        bool associative = true;
        for (int i = 0; i < d && associative; ++i)
            for (int j = 0; j < d && associative; ++j)
                for (int k = 0; k < d; ++k) {
                    const AlgebraElement l =
                        mul(mul(basis_element(name, i), basis_element(name, j)),
                            basis_element(name, k));
                    const AlgebraElement r =
                        mul(basis_element(name, i),
                            mul(basis_element(name, j), basis_element(name, k)));
                    bool same = true;
                    for (int c = 0; c < d; ++c) same = same && l.coeffs[c] == r.coeffs[c];
                    if (!same) {
                        associative = false;
                        break;
                    }
                }
        const bool expect = name != AlgebraName::O && name != AlgebraName::Oprime;
        assoc.record(associative == expect ? 0.0 : 1.0);
    }
    return {comp.result(), alt.result(), conj_anti.result(), assoc.result()};
}

IdentityResult pi9_conformance(int samples, std::uint64_t seed, const Tolerances& tol) {
    std::mt19937_64 rng(salted(seed, "pi9"));
    const Fibration f = make_fibration("pi9");
    ResidualTracker trk("pi9_conformance",
                        "algebra evaluator matches the literal nine-component polynomial",
                        tol.get("pi9_conformance"));
    for (int it = 0; it < samples; ++it) {
        const Vec p = f.random_point(rng);
        const Vec a = f.evaluate(p);
        const Vec b = pi9_polynomial(p);
        double worst = 0.0;
        for (int i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[i]) / (1.0 + std::abs(b[i])));
        trk.record(worst);
    }
    return trk.result();
}

// --- driver -------------------------------------------------------------------

VerificationReport verify_fibration(const std::string& id, const RunConfig& config) {
    const Tolerances tol = tolerances_from(config);
    const int samples = std::max(1, config.samples);
    VerificationReport report;
    report.fibration = id;
    report.seed = config.seed;

    const Fibration f = make_fibration(id, config.m, config.t);
    report.fibration_json = f.to_json();

    if (!f.has_quadric_total()) {
        for (auto& r : composite_checks(f, samples, config.seed, tol)) report.add(std::move(r));
        return report;
    }

    for (auto& r : membership_checks(f, samples, config.seed, tol)) report.add(std::move(r));
    for (auto& r : oneill_residuals(f, samples, config.seed, tol, config.expensive))
        report.add(std::move(r));
    const int frame_samples = std::max(2, samples / 25);
    for (auto& r : jacobi_spectrum_check(f, frame_samples, config.seed, tol))
        report.add(std::move(r));
    if (f.base.dim != f.fibre.dim + 1)
        for (auto& r : special_osserman_check(f, frame_samples, config.seed, tol))
            report.add(std::move(r));
    for (auto& r : clifford_structure_check(f, std::max(2, samples / 50), config.seed, tol))
        report.add(std::move(r));
    for (auto& r : special_basis_check(f, std::min(samples, 50), config.seed, tol))
        report.add(std::move(r));
    return report;
}

std::vector<VerificationReport> run_verify(const RunConfig& config) {
    std::vector<std::string> ids = config.fibrations;
    if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = fibration_ids();
    for (const std::string& id : ids) (void)make_fibration(id, config.m, config.t);

    std::vector<VerificationReport> reports;
    {
        VerificationReport algebra_report;
        algebra_report.fibration = "algebra";
        algebra_report.fibration_json = "{\"id\":\"algebra\"}";
        algebra_report.seed = config.seed;
        const Tolerances tol = tolerances_from(config);
        const int n = std::max(config.samples, 10000);
        for (auto& r : algebra_checks(n, config.seed, tol)) algebra_report.add(std::move(r));
        reports.push_back(std::move(algebra_report));
    }
    for (const std::string& id : ids) reports.push_back(verify_fibration(id, config));
    return reports;
}

// --- serialization --------------------------------------------------------------

namespace {

ordered_json identity_json(const IdentityResult& r) {
    ordered_json j;
    j["id"] = r.id;
    j["anchor"] = r.anchor;
    j["samples"] = r.samples;
    j["max_residual"] = r.max_residual;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["reprojections"] = r.reprojections;
    return j;
}

ordered_json config_json(const RunConfig& config, const Tolerances& tol) {
    ordered_json j;
    j["samples"] = config.samples;
    j["seed"] = config.seed;
    j["expensive"] = config.expensive;
    j["m"] = config.m;
    j["t"] = config.t;
    // the curvature pairing convention is fixed so that a horizontal plane of
    // a curvature -4 base evaluates to -4 (g(X,X) g(Y,Y) - g(X,Y)^2)
    j["curvature_pairing"] = "R(X,Y,Z,W) = g(R(X,Y)W, Z)";
    ordered_json tj;
    for (const auto& [name, value] : tol.all()) tj[name] = value;
    j["tolerances"] = tj;
    return j;
}

}  // namespace

std::string report_to_json(const VerificationReport& report, const RunConfig& config,
                           const Tolerances& tol) {
    ordered_json j;
    j["fibration"] = report.fibration;
    j["subject"] = nlohmann::json::parse(report.fibration_json);
    j["config"] = config_json(config, tol);
    ordered_json ids = ordered_json::array();
    for (const auto& r : report.identities) ids.push_back(identity_json(r));
    j["identities"] = ids;
    j["pass"] = report.pass();
    return j.dump(2);
}

std::string report_to_markdown(const VerificationReport& report) {
    std::ostringstream os;
    os << "## " << report.fibration << (report.pass() ? "  [pass]" : "  [FAIL]") << "\n\n";
    os << "| identity | samples | max residual | tolerance | pass |\n";
    os << "|---|---|---|---|---|\n";
    for (const auto& r : report.identities) {
        os << "| " << r.id << " | " << r.samples << " | " << r.max_residual << " | "
           << r.tolerance << " | " << (r.pass ? "yes" : "NO") << " |\n";
    }
    return os.str();
}

std::string summary_to_json(const std::vector<VerificationReport>& reports,
                            const RunConfig& config) {
    const Tolerances tol = tolerances_from(config);
    ordered_json j;
    j["config"] = config_json(config, tol);
    ordered_json arr = ordered_json::array();
    for (const auto& report : reports)
        arr.push_back(nlohmann::ordered_json::parse(report_to_json(report, config, tol)));
    j["reports"] = arr;
    j["pass"] = all_pass(reports);
    return j.dump(2);
}

bool all_pass(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass()) return false;
    return true;
}

}  // namespace hopfsub
