#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hopfsub {

/// Composition algebras over the reals built by Cayley-Dickson doubling.
///
/// Six algebras are provided: the complex numbers C, the para-complex
/// numbers A (e2^2 = +1), the quaternions H, the para-quaternions B, the
/// octonions O and the split octonions Oprime.  Basis element 0 is the unit;
/// a doubled algebra of dimension 2h has basis (e_i, 0), (0, e_i) in that
/// order.  The product rule on pairs is
///
///     (a,b)(c,e) = (ac + g.conj(e) b,  e a + b conj(c))
///
/// with doubling sign g, and conjugation (a,b) -> (conj(a), -b).  The
/// convention is frozen: the split-octonion table it produces matches the
/// nine-component polynomial form of the pi9 Hopf map coefficient by
/// coefficient (see the conformance oracle in fibration.cpp).
enum class AlgebraName : std::uint8_t { C, A, H, B, O, Oprime };

struct AlgebraTag {
    AlgebraName name;
    int dim;                          // real dimension, 2, 4 or 8
    std::vector<int> doubling_signs;  // +-1 per Cayley-Dickson step

    std::string str() const;
};

const AlgebraTag& algebra_tag(AlgebraName name);
const AlgebraTag& algebra_tag(const std::string& name);

/// One Cayley-Dickson step.  Throws std::invalid_argument past dimension 8.
AlgebraTag cayley_dickson_double(const AlgebraTag& base, int gamma);

/// Basis-level product table: mul(e_i, e_j) = sign * e_index, exactly.
struct MultiplicationTable {
    AlgebraTag tag;
    struct Entry {
        int index;
        int sign;
    };
    std::vector<std::array<Entry, 8>> rows;  // rows[i][j], j < tag.dim

    const Entry& at(int i, int j) const { return rows[i][j]; }
    std::string to_json() const;
};

const MultiplicationTable& multiplication_table(AlgebraName name);

struct AlgebraElement {
    AlgebraName name;
    std::vector<double> coeffs;  // length = dim, coeffs[0] real part

    int dim() const { return static_cast<int>(coeffs.size()); }
};

AlgebraElement make_element(AlgebraName name, std::vector<double> coeffs);
AlgebraElement basis_element(AlgebraName name, int index);

AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement conj(const AlgebraElement& x);
AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scale(double s, const AlgebraElement& x);

/// N(z) = real part of conj(z) z.  Signature (d,0) for C, H, O and
/// (d/2, d/2) for A, B, Oprime.
double norm_form(const AlgebraElement& x);

/// Polarization of the norm form: inner(x,y) = (N(x+y) - N(x) - N(y)) / 2.
double inner(const AlgebraElement& x, const AlgebraElement& y);

double real_part(const AlgebraElement& x);

}  // namespace hopfsub
