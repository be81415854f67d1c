#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hopfsub {
namespace classify {

/// Solutions of the index bookkeeping for a totally geodesic fibration of a
/// pseudo-hyperbolic space: n = k (r+1), s = q1 (r'+1) + q2 (r-r'),
/// q1 + q2 = k.  An empty list means the tuple is inadmissible.
struct AdmissibilitySolution {
    int k, q1, q2;
};

struct AdmissibilityInstance {
    int n, s, r, rp;
    std::vector<AdmissibilitySolution> solutions;
    bool admissible() const { return !solutions.empty(); }
};

AdmissibilityInstance admissible(int n, int s, int r, int rp);

/// Parallelizability of the fibres restricts r' >= 2 to {3, 7}.
bool fibre_index_allowed(int rp);

enum class Existence { Yes, No };

struct CatalogEntry {
    std::string id;
    std::string family;        // printable family pattern
    std::string total;         // printable total space
    std::string base;          // printable base space
    int fibre_dim, fibre_index;
    std::string fibre_model;
    Existence exists;
    std::string note;          // nonexistence anchor or construction note
    bool composite;
    // representative parameters used by the verification driver
    int m, t;
};

/// The classified families, the three octonion rows, the three composite
/// fibrations and the annotated-nonexistent rows.
const std::vector<CatalogEntry>& catalog();

/// Entries whose total space matches (a, l) for some parameter choice.
std::vector<CatalogEntry> lookup(int a, int l);

std::string catalog_to_json();
std::string catalog_to_markdown();

/// One admissible-and-classified row of the dimension/index sweep.
struct SweepRow {
    int n, s, r, rp;
    bool exists;
    std::string note;
};

/// Enumerates every (n, s, r, r') with r in {1,3,7}, n <= n_max that passes
/// the index bookkeeping together with the structural restrictions of the
/// classification (boundary-signature, parallelizability, constant-curvature
/// block structure, and the classified base list).  Rows marked
/// exists == false are admissible arithmetically but excluded.
std::vector<SweepRow> sweep(int n_max);

}  // namespace classify
}  // namespace hopfsub
