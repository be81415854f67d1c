#include <doctest.h>

#include <random>
#include <stdexcept>

#include "hopfsub/algebra.hpp"

using namespace hopfsub;

namespace {

AlgebraElement random_element(AlgebraName name, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> c(algebra_tag(name).dim);
    for (double& v : c) v = gauss(rng);
    return AlgebraElement{name, std::move(c)};
}

const AlgebraName kAll[] = {AlgebraName::C, AlgebraName::A, AlgebraName::H,
                            AlgebraName::B, AlgebraName::O, AlgebraName::Oprime};

}  // namespace

TEST_CASE("doubling produces the catalogued algebras") {
    // i^2 = -1 in C
    const AlgebraElement i = basis_element(AlgebraName::C, 1);
    const AlgebraElement ii = mul(i, i);
    CHECK(ii.coeffs[0] == -1.0);
    CHECK(ii.coeffs[1] == 0.0);

    // eps^2 = +1 in A
    const AlgebraElement eps = basis_element(AlgebraName::A, 1);
    const AlgebraElement ee = mul(eps, eps);
    CHECK(ee.coeffs[0] == 1.0);

    // doubling H by +1 gives the split octonions, norm signature (4,4)
    const AlgebraTag oprime = cayley_dickson_double(algebra_tag(AlgebraName::H), +1);
    CHECK(oprime.name == AlgebraName::Oprime);
    int plus = 0, minus = 0;
    for (int i2 = 0; i2 < 8; ++i2) {
        const double n = norm_form(basis_element(AlgebraName::Oprime, i2));
        (n > 0 ? plus : minus) += 1;
    }
    CHECK(plus == 4);
    CHECK(minus == 4);

    CHECK_THROWS_AS(cayley_dickson_double(algebra_tag(AlgebraName::O), -1),
                    std::invalid_argument);
    CHECK(cayley_dickson_double(algebra_tag(AlgebraName::C), -1).name == AlgebraName::H);
    CHECK(cayley_dickson_double(algebra_tag(AlgebraName::C), +1).name == AlgebraName::B);
}

TEST_CASE("quaternion table: i j = k") {
    const AlgebraElement k = mul(basis_element(AlgebraName::H, 1), basis_element(AlgebraName::H, 2));
    CHECK(k.coeffs[3] == 1.0);
    const AlgebraElement mk = mul(basis_element(AlgebraName::H, 2), basis_element(AlgebraName::H, 1));
    CHECK(mk.coeffs[3] == -1.0);
}

TEST_CASE("unit element and table consistency") {
    for (AlgebraName name : kAll) {
        const int d = algebra_tag(name).dim;
        const auto& table = multiplication_table(name);
        for (int i = 0; i < d; ++i) {
            // e_0 is a two-sided identity
            CHECK(table.at(0, i).index == i);
            CHECK(table.at(0, i).sign == 1);
            CHECK(table.at(i, 0).index == i);
            CHECK(table.at(i, 0).sign == 1);
            // table reproduces mul exactly on basis pairs
            for (int j = 0; j < d; ++j) {
                const AlgebraElement prod = mul(basis_element(name, i), basis_element(name, j));
                const auto& e = table.at(i, j);
                CHECK(prod.coeffs[e.index] == static_cast<double>(e.sign));
            }
        }
    }
}

TEST_CASE("conjugation") {
    std::mt19937_64 rng(7);
    for (AlgebraName name : kAll) {
        CHECK(conj(basis_element(name, 0)).coeffs[0] == 1.0);
        const AlgebraElement x = random_element(name, rng);
        const AlgebraElement cc = conj(conj(x));
        for (int i = 0; i < x.dim(); ++i) CHECK(cc.coeffs[i] == x.coeffs[i]);
        // z conj(z) is purely real
        const AlgebraElement zz = mul(x, conj(x));
        for (int i = 1; i < x.dim(); ++i) CHECK(std::abs(zz.coeffs[i]) < 1e-12);
        CHECK(zz.coeffs[0] == doctest::Approx(norm_form(x)).epsilon(1e-12));
    }
}

TEST_CASE("norm form values") {
    // N(a + b i) = a^2 + b^2 in C
    const AlgebraElement z = make_element(AlgebraName::C, {3.0, 4.0});
    CHECK(norm_form(z) == doctest::Approx(25.0));
    // 1 + eps is null in A
    const AlgebraElement n = make_element(AlgebraName::A, {1.0, 1.0});
    CHECK(norm_form(n) == 0.0);
    // polarization identity
    std::mt19937_64 rng(3);
    const AlgebraElement x = random_element(AlgebraName::B, rng);
    const AlgebraElement y = random_element(AlgebraName::B, rng);
    CHECK(inner(x, y) ==
          doctest::Approx(0.5 * (norm_form(add(x, y)) - norm_form(x) - norm_form(y))));
}

TEST_CASE("composition property at seeded random pairs") {
    std::mt19937_64 rng(2024);
    for (AlgebraName name : kAll) {
        for (int it = 0; it < 10000; ++it) {
            const AlgebraElement x = random_element(name, rng);
            const AlgebraElement y = random_element(name, rng);
            const double lhs = norm_form(mul(x, y));
            const double rhs = norm_form(x) * norm_form(y);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("alternativity") {
    std::mt19937_64 rng(11);
    for (AlgebraName name : kAll) {
        const int d = algebra_tag(name).dim;
        // exact on basis pairs
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const AlgebraElement x = basis_element(name, i);
                const AlgebraElement y = basis_element(name, j);
                const AlgebraElement l = mul(x, mul(x, y));
                const AlgebraElement r = mul(mul(x, x), y);
                for (int c = 0; c < d; ++c) CHECK(l.coeffs[c] == r.coeffs[c]);
            }
        // random pairs
        for (int it = 0; it < 200; ++it) {
            const AlgebraElement x = random_element(name, rng);
            const AlgebraElement y = random_element(name, rng);
            const AlgebraElement l1 = mul(x, mul(x, y));
            const AlgebraElement r1 = mul(mul(x, x), y);
            const AlgebraElement l2 = mul(mul(y, x), x);
            const AlgebraElement r2 = mul(y, mul(x, x));
            for (int c = 0; c < d; ++c) {
                CHECK(l1.coeffs[c] == doctest::Approx(r1.coeffs[c]).epsilon(1e-10));
                CHECK(l2.coeffs[c] == doctest::Approx(r2.coeffs[c]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("conjugation is an anti-automorphism on basis pairs") {
    for (AlgebraName name : kAll) {
        const int d = algebra_tag(name).dim;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const AlgebraElement lhs = conj(mul(basis_element(name, i), basis_element(name, j)));
                const AlgebraElement rhs = mul(conj(basis_element(name, j)),
                                               conj(basis_element(name, i)));
                for (int c = 0; c < d; ++c) CHECK(lhs.coeffs[c] == rhs.coeffs[c]);
            }
    }
}

TEST_CASE("associativity pattern and a non-associativity witness") {
    for (AlgebraName name : kAll) {
        const int d = algebra_tag(name).dim;
        int bad_triples = 0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    const AlgebraElement l = mul(mul(basis_element(name, i), basis_element(name, j)),
                                                 basis_element(name, k));
                    const AlgebraElement r = mul(basis_element(name, i),
                                                 mul(basis_element(name, j), basis_element(name, k)));
                    for (int c = 0; c < d; ++c)
                        if (l.coeffs[c] != r.coeffs[c]) {
                            ++bad_triples;
                            break;
                        }
                }
        if (name == AlgebraName::O || name == AlgebraName::Oprime)
            CHECK(bad_triples > 0);
        else
            CHECK(bad_triples == 0);
    }
    // the classical witness in O: (e1 e2) e4 != e1 (e2 e4)
    const AlgebraElement l =
        mul(mul(basis_element(AlgebraName::O, 1), basis_element(AlgebraName::O, 2)),
            basis_element(AlgebraName::O, 4));
    const AlgebraElement r =
        mul(basis_element(AlgebraName::O, 1),
            mul(basis_element(AlgebraName::O, 2), basis_element(AlgebraName::O, 4)));
    bool same = true;
    for (int c = 0; c < 8; ++c) same = same && l.coeffs[c] == r.coeffs[c];
    CHECK_FALSE(same);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(mul(basis_element(AlgebraName::C, 0), basis_element(AlgebraName::H, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_element(AlgebraName::C, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(basis_element(AlgebraName::C, 5), std::invalid_argument);
}

TEST_CASE("table JSON export") {
    const std::string j = multiplication_table(AlgebraName::A).to_json();
    CHECK(j.find("\"algebra\":\"A\"") != std::string::npos);
    CHECK(j.find("\"dim\":2") != std::string::npos);
    // eps * eps = + e0
    CHECK(j.find("[[[0,1],[1,1]],[[1,1],[0,1]]]") != std::string::npos);
}
