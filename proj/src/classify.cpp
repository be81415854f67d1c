#include "hopfsub/classify.hpp"

#include <sstream>
#include <stdexcept>

namespace hopfsub {
namespace classify {

AdmissibilityInstance admissible(int n, int s, int r, int rp) {
    if (rp < 0 || rp > r || s < 0 || s > n)
        throw std::invalid_argument("admissible needs 0 <= r' <= r and 0 <= s <= n");
    AdmissibilityInstance out{n, s, r, rp, {}};
    for (int k = 1; k * (r + 1) <= n; ++k) {
        if (k * (r + 1) != n) continue;
        for (int q1 = 0; q1 <= k; ++q1) {
            const int q2 = k - q1;
            if (q1 * (rp + 1) + q2 * (r - rp) == s) out.solutions.push_back({k, q1, q2});
        }
    }
    return out;
}

bool fibre_index_allowed(int rp) { return rp < 2 || rp == 3 || rp == 7; }

namespace {

CatalogEntry family(const std::string& id, const std::string& fam, const std::string& total,
                    const std::string& base, int r, int rp, const std::string& model,
                    int m, int t, bool composite = false) {
    return CatalogEntry{id, fam, total, base, r, rp, model, Existence::Yes, "", composite, m, t};
}

CatalogEntry excluded(const std::string& id, const std::string& total, const std::string& base,
                      int r, int rp, const std::string& note) {
    return CatalogEntry{id, "", total, base, r, rp, "", Existence::No, note, false, 0, 0};
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        family("pi_C", "H(2m+1,2t+1) -> CH(m,t), 0<=t<=m", "H(2m+1,2t+1)", "CH(m,t)", 1, 1,
               "H(1,1)", 2, 1),
        family("pi_A", "H(2m+1,m) -> AP(m)", "H(2m+1,m)", "AP(m)", 1, 0, "H(1,0)", 2, 0),
        family("pi_H", "H(4m+3,4t+3) -> HH(m,t), 0<=t<=m", "H(4m+3,4t+3)", "HH(m,t)", 3, 3,
               "H(3,3)", 2, 1),
        family("pi_B", "H(4m+3,2m+1) -> BP(m)", "H(4m+3,2m+1)", "BP(m)", 3, 1, "H(3,1)", 2, 0),
        family("pi3", "H(15,15) -> H(8,8)(-4)", "H(15,15)", "H(8,8)(-4)", 7, 7, "H(7,7)", 0, 0),
        family("pi9", "H(15,7) -> H(8,4)(-4)", "H(15,7)", "H(8,4)(-4)", 7, 3, "H(7,3)", 0, 0),
        family("pi6", "H(15,7) -> H(8,0)(-4)", "H(15,7)", "H(8,0)(-4)", 7, 7, "H(7,7)", 0, 0),
        family("pi_CH", "CH(2m+1,2t+1) -> HH(m,t)", "CH(2m+1,2t+1)", "HH(m,t)", 2, 2, "CH(1,1)",
               2, 1, true),
        family("pi_CB", "CH(2m+1,m) -> BP(m)", "CH(2m+1,m)", "BP(m)", 2, 0, "CH(1,0)", 2, 0,
               true),
        family("pi_AB", "AP(2m+1) -> BP(m)", "AP(2m+1)", "BP(m)", 2, 1, "AP(1)", 2, 0, true),
        excluded("no_OH2", "H(23,7+8i)", "OH2_i, i=0,1,2", 7, 7,
                 "the base curvature tensor would need a rank-7 Clifford family, which the "
                 "octonion hyperbolic planes do not admit"),
        excluded("no_OprimeP2", "H(23,q), 8<=q<=15", "O'P2", 7, 7,
                 "the base curvature tensor would need a rank-7 Clifford family, which the "
                 "split-octonion projective plane does not admit"),
        excluded("no_H31", "H(31,15)", "H(16,8)(-4)", 15, 7,
                 "a rank-15 Clifford family forces irreducible modules of dimension 128, "
                 "larger than the 16-dimensional horizontal space"),
    };
    return entries;
}

std::vector<CatalogEntry> lookup(int a, int l) {
    std::vector<CatalogEntry> out;
    if (a < 3 || l < 0 || l > a) return out;
    auto instantiate = [&](const char* id, int m, int t) {
        for (const CatalogEntry& e : catalog()) {
            if (e.id == id) {
                CatalogEntry inst = e;
                inst.m = m;
                inst.t = t;
                out.push_back(inst);
            }
        }
    };
    if (a % 2 == 1 && l % 2 == 1) instantiate("pi_C", (a - 1) / 2, (l - 1) / 2);
    if (a % 2 == 1 && 2 * l == a - 1) instantiate("pi_A", (a - 1) / 2, 0);
    if (a % 4 == 3 && l % 4 == 3) instantiate("pi_H", (a - 3) / 4, (l - 3) / 4);
    if (a % 4 == 3 && 2 * l == a - 1) instantiate("pi_B", (a - 3) / 4, 0);
    if (a == 15 && l == 15) instantiate("pi3", 0, 0);
    if (a == 15 && l == 7) {
        instantiate("pi9", 0, 0);
        instantiate("pi6", 0, 0);
    }
    return out;
}

std::string catalog_to_json() {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const CatalogEntry& e : catalog()) {
        if (!first) os << ",";
        first = false;
        os << "{\"id\":\"" << e.id << "\",\"family\":\"" << e.family << "\",\"total\":\""
           << e.total << "\",\"base\":\"" << e.base << "\",\"fibre\":{\"dim\":" << e.fibre_dim
           << ",\"index\":" << e.fibre_index << ",\"model\":\"" << e.fibre_model << "\"}"
           << ",\"exists\":" << (e.exists == Existence::Yes ? "true" : "false")
           << ",\"composite\":" << (e.composite ? "true" : "false") << ",\"note\":\"" << e.note
           << "\"}";
    }
    os << "]";
    return os.str();
}

std::string catalog_to_markdown() {
    std::ostringstream os;
    os << "| id | total | base | fibre |\n|---|---|---|---|\n";
    for (const CatalogEntry& e : catalog()) {
        if (e.exists != Existence::Yes) continue;
        os << "| " << e.id << " | " << e.total << " | " << e.base << " | " << e.fibre_model
           << " (" << e.fibre_dim << "," << e.fibre_index << ") |\n";
    }
    os << "\nExcluded:\n\n| id | total | base | reason |\n|---|---|---|---|\n";
    for (const CatalogEntry& e : catalog()) {
        if (e.exists == Existence::Yes) continue;
        os << "| " << e.id << " | " << e.total << " | " << e.base << " | " << e.note << " |\n";
    }
    return os.str();
}

std::vector<SweepRow> sweep(int n_max) {
    std::vector<SweepRow> rows;
    for (int r : {1, 3, 7}) {
        for (int n = 1; n <= n_max; ++n) {
            for (int s = 0; s <= n; ++s) {
                for (int rp = 0; rp <= r; ++rp) {
                    if (!admissible(n, s, r, rp).admissible()) continue;
                    if (!fibre_index_allowed(rp)) continue;
                    if (s == 0 || s == n) {
                        // boundary signatures are the sign-definite classifications:
                        // negative-definite fibres, and rank 7 only over the
                        // constant-curvature block n = r + 1
                        if (rp != r) continue;
                        if (r == 7 && n != 8) continue;
                        rows.push_back({n, s, r, rp, true, ""});
                        continue;
                    }
                    if (n == r + 1) {
                        // constant-curvature base: two special bases of opposite
                        // causal character force r = 2r' + 1 and s = r' + 1
                        if (r != 2 * rp + 1 || s != rp + 1) continue;
                        rows.push_back({n, s, r, rp, true, ""});
                        continue;
                    }
                    // two-eigenvalue base: the classified list pins (r, r', s)
                    bool keep = false;
                    bool exists = true;
                    std::string note;
                    if (r == 1) {
                        keep = (rp == 1 && s % 2 == 0) || (rp == 0 && 2 * s == n);
                    } else if (r == 3) {
                        keep = (rp == 3 && s % 4 == 0) || (rp == 1 && 2 * s == n);
                    } else if (r == 7) {
                        // only the indefinite octonion plane survives the
                        // boundary and isotropy restrictions, and it is excluded
                        // by the Clifford-structure obstruction
                        keep = (n == 16 && s == 8 && rp == 7);
                        exists = false;
                        note = "no rank-7 Clifford family on a 16-dimensional base";
                    }
                    if (keep) rows.push_back({n, s, r, rp, exists, note});
                }
            }
        }
    }
    return rows;
}

}  // namespace classify
}  // namespace hopfsub
