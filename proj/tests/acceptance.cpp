// Acceptance suite: one line per criterion, exit status 0 only if all pass.

#include <array>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "hopfsub/classify.hpp"
#include "hopfsub/geometry.hpp"
#include "hopfsub/verify.hpp"

using namespace hopfsub;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << number << " (" << name << "): "
              << detail << "\n";
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const std::vector<std::string>& quadric_ids() {
    static const std::vector<std::string> ids = {"pi_C", "pi_A", "pi_H", "pi_B", "pi1", "pi2",
                                                 "pi3",  "pi4",  "pi5",  "pi6",  "pi7", "pi8",
                                                 "pi9"};
    return ids;
}

// --- criterion 1: pi9 conformance ------------------------------------------------

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    Tolerances tol;
    const IdentityResult r = pi9_conformance(1000, 20260809, tol);
    const double dt = seconds_since(start);
    std::ostringstream os;
    os << "max componentwise relative deviation " << r.max_residual << " over " << r.samples
       << " points, " << dt << " s";
    report(1, "pi9 polynomial conformance", r.pass && dt < 1.0, os.str());
}

// --- criterion 2: quadric mapping -------------------------------------------------

void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool pass = true;
    for (int k = 1; k <= 9; ++k) {
        const Fibration f = make_fibration("pi" + std::to_string(k));
        std::mt19937_64 rng(500 + k);
        for (int it = 0; it < 10000; ++it) {
            const Vec p = f.random_point(rng);
            const double defect = membership_defect(*f.base_space, f.evaluate(p));
            worst = std::max(worst, defect);
            pass = pass && defect <= 1e-10;
        }
    }
    const double dt = seconds_since(start);
    std::ostringstream os;
    os << "worst target-quadric defect " << worst << " over 9 x 10000 points, " << dt << " s";
    report(2, "curvature -4 quadric mapping", pass && dt < 10.0, os.str());
}

// --- criteria 3 and 4: structure equations and the A*A identity -------------------

void criteria_3_4() {
    Tolerances tol;
    bool pass3 = true, pass4 = true;
    double worst3 = 0.0, worst4 = 0.0;
    const std::set<std::string> oneill_ids = {"oneill_a",     "oneill_a_bianchi", "oneill_d",
                                              "oneill_e",     "oneill_cor_a",     "oneill_cor_b",
                                              "ranjan"};
    for (const std::string& id : quadric_ids()) {
        const Fibration f = make_fibration(id, 2, 1);
        for (const IdentityResult& r : oneill_residuals(f, 1000, 20260809, tol)) {
            if (oneill_ids.count(r.id)) {
                pass3 = pass3 && r.pass;
                worst3 = std::max(worst3, r.max_residual);
                if (!r.pass) std::cout << "  [" << id << "/" << r.id << " residual "
                                       << r.max_residual << "]\n";
            }
            if (r.id == "axaxv") {
                pass4 = pass4 && r.pass;
                worst4 = std::max(worst4, r.max_residual);
            }
        }
    }
    {
        std::ostringstream os;
        os << "worst residual " << worst3 << " over 1000 frames x " << quadric_ids().size()
           << " fibrations";
        report(3, "structure equations and Ranjan identity", pass3, os.str());
    }
    {
        std::ostringstream os;
        os << "worst residual " << worst4 << ", both causal types";
        report(4, "A_X A_X V = -c g(X,X) V", pass4, os.str());
    }
}

// --- criterion 5: Jacobi spectra ---------------------------------------------------

void criterion_5() {
    Tolerances tol;
    bool pass = true;
    std::ostringstream detail;
    auto run = [&](const std::string& id, int m, int t) {
        const Fibration f = make_fibration(id, m, t);
        for (const IdentityResult& r : jacobi_spectrum_check(f, 4, 20260809, tol)) {
            if (!r.pass) {
                pass = false;
                detail << " [" << id << "(m=" << m << ",t=" << t << ")/" << r.id << " "
                       << r.max_residual << "]";
            }
        }
    };
    run("pi_C", 2, 0);
    run("pi_C", 2, 1);
    run("pi_A", 2, 0);
    run("pi_H", 2, 0);
    run("pi_H", 2, 1);
    run("pi_H", 2, 2);
    run("pi_B", 2, 0);
    run("pi6", 2, 0);
    run("pi9", 2, 0);
    report(5, "Jacobi eigenvalue structure",pass,
           pass ? "two clusters with ratio 4 and multiplicities (r, n-1-r); "
                  "single cluster -4 eps for pi6 and pi9"
                : detail.str());
}

// --- criterion 6: Clifford structures ---------------------------------------------

void criterion_6() {
    Tolerances tol;
    bool pass = true;
    double worst = 0.0;
    std::ostringstream detail;
    for (const char* id : {"pi_H", "pi_B"}) {
        const Fibration f = make_fibration(id, 2, 1);
        for (const IdentityResult& r : clifford_structure_check(f, 3, 20260809, tol)) {
            pass = pass && r.pass;
            worst = std::max(worst, r.max_residual);
            if (!r.pass) detail << " [" << id << "/" << r.id << " " << r.max_residual << "]";
        }
    }
    std::ostringstream os;
    os << "anticommutation and curvature reconstruction, worst residual " << worst
       << detail.str();
    report(6, "Clifford structure on the quaternionic and para-quaternionic bases", pass,
           os.str());
}

// --- criterion 7: special bases ----------------------------------------------------

void criterion_7() {
    Tolerances tol;
    bool pass = true;
    std::ostringstream detail;
    std::mt19937_64 rng(20260809);
    for (const std::string& id : quadric_ids()) {
        const Fibration f = make_fibration(id, 2, 1);
        for (const IdentityResult& r : special_basis_check(f, 50, 20260809, tol)) {
            if (!r.pass) {
                pass = false;
                detail << " [" << id << "/" << r.id << " " << r.max_residual << "]";
            }
        }
        // fibre-signature audit: negative definite over the isotropic bases,
        // positive definite for the para-complex family, (2,1) for the
        // para-quaternionic one
        for (int it = 0; it < 5; ++it) {
            const Vec p = f.random_point(rng);
            int timelike = 0;
            for (const Vec& v : f.vertical_frame(p))
                if (inner(f.total, v, v) < 0) ++timelike;
            if (timelike != f.fibre.index) {
                pass = false;
                detail << " [" << id << " fibre signature]";
            }
        }
    }
    report(7, "special bases at 50 anchors per fibration", pass,
           pass ? "orthonormality, A_{L_a}L_b, index bookkeeping and fibre signatures"
                : detail.str());
}

// --- criterion 8: classification sweep ---------------------------------------------

void criterion_8() {
    const auto start = std::chrono::steady_clock::now();
    std::set<std::array<int, 4>> expect;
    for (int m = 1; 2 * m <= 32; ++m) {
        for (int t = 0; t <= m; ++t) expect.insert({2 * m, 2 * t, 1, 1});
        expect.insert({2 * m, m, 1, 0});
    }
    for (int m = 1; 4 * m <= 32; ++m) {
        for (int t = 0; t <= m; ++t) expect.insert({4 * m, 4 * t, 3, 3});
        expect.insert({4 * m, 2 * m, 3, 1});
    }
    expect.insert({8, 0, 7, 7});
    expect.insert({8, 4, 7, 3});
    expect.insert({8, 8, 7, 7});

    std::set<std::array<int, 4>> got_exists, got_excluded;
    for (const classify::SweepRow& row : classify::sweep(32))
        (row.exists ? got_exists : got_excluded).insert({row.n, row.s, row.r, row.rp});
    const double dt = seconds_since(start);

    const bool pass = got_exists == expect &&
                      got_excluded == std::set<std::array<int, 4>>{{16, 8, 7, 7}} && dt < 1.0;
    std::ostringstream os;
    os << got_exists.size() << " classified rows plus the excluded (16,8,7,7) row, " << dt
       << " s";
    report(8, "dimension/index sweep reproduces the classification", pass, os.str());
}

// --- criterion 9: byte-identical reports --------------------------------------------

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_9() {
#ifndef HOPFSUB_CLI_PATH
    report(9, "deterministic reports", false, "CLI path not configured");
#else
    const fs::path tmp = fs::temp_directory_path() / "hopfsub_acceptance";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    const std::string base = std::string(HOPFSUB_CLI_PATH) +
                             " verify --fibration all --samples 200 --seed 7 --out ";
    bool pass = true;
    std::ostringstream detail;
    for (int run = 1; run <= 2; ++run) {
        const std::string cmd = base + (tmp / ("run" + std::to_string(run))).string() +
                                " > /dev/null 2> /dev/null";
        const int rc = std::system(cmd.c_str());
        if (rc != 0) {
            pass = false;
            detail << " [run " << run << " exited " << rc << "]";
        }
    }
    int files = 0;
    if (pass) {
        for (const auto& entry : fs::directory_iterator(tmp / "run1")) {
            const fs::path other = tmp / "run2" / entry.path().filename();
            ++files;
            if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) {
                pass = false;
                detail << " [" << entry.path().filename().string() << " differs]";
            }
        }
        if (files == 0) {
            pass = false;
            detail << " [no reports written]";
        }
    }
    std::ostringstream os;
    os << files << " report files byte-identical across two runs" << detail.str();
    report(9, "deterministic reports", pass, os.str());
#endif
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criteria_3_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
