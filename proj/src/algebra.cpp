#include "hopfsub/algebra.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <span>
#include <sstream>
#include <stdexcept>

namespace hopfsub {
namespace {

void cd_conj(std::span<double> x) {
    for (std::size_t i = 1; i < x.size(); ++i) x[i] = -x[i];
}

// (a,b)(c,e) = (ac + g.conj(e) b, e a + b conj(c)), recursing to the reals.
void cd_mul(std::span<const double> x, std::span<const double> y,
            std::span<const int> signs, std::span<double> out) {
    const std::size_t d = x.size();
    if (d == 1) {
        out[0] = x[0] * y[0];
        return;
    }
    const std::size_t h = d / 2;
    const int g = signs.back();
    const auto sub = signs.first(signs.size() - 1);
    std::vector<double> t1(h), t2(h), tmp(h);

    // first half: a c + g conj(e) b
    std::vector<double> ce(y.begin() + h, y.end());
    cd_conj(ce);
    cd_mul(x.first(h), y.first(h), sub, t1);
    cd_mul(ce, x.subspan(h), sub, t2);
    for (std::size_t i = 0; i < h; ++i) out[i] = t1[i] + g * t2[i];

    // second half: e a + b conj(c)
    std::vector<double> cc(y.begin(), y.begin() + h);
    cd_conj(cc);
    cd_mul(y.subspan(h), x.first(h), sub, t1);
    cd_mul(x.subspan(h), cc, sub, t2);
    for (std::size_t i = 0; i < h; ++i) out[h + i] = t1[i] + t2[i];
}

AlgebraTag make_tag(AlgebraName name, std::vector<int> signs) {
    return AlgebraTag{name, 1 << static_cast<int>(signs.size()), std::move(signs)};
}

MultiplicationTable build_table(const AlgebraTag& tag) {
    MultiplicationTable table{tag, {}};
    const int d = tag.dim;
    table.rows.resize(d);
    std::vector<double> x(d), y(d), z(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            std::fill(x.begin(), x.end(), 0.0);
            std::fill(y.begin(), y.end(), 0.0);
            x[i] = 1.0;
            y[j] = 1.0;
            cd_mul(x, y, tag.doubling_signs, z);
            int index = -1;
            for (int k = 0; k < d; ++k) {
                if (z[k] != 0.0) {
                    if (index >= 0) throw std::logic_error("basis product not monomial");
                    index = k;
                }
            }
            table.rows[i][j] = {index, z[index] < 0 ? -1 : 1};
        }
    }
    return table;
}

}  // namespace

std::string AlgebraTag::str() const {
    switch (name) {
        case AlgebraName::C: return "C";
        case AlgebraName::A: return "A";
        case AlgebraName::H: return "H";
        case AlgebraName::B: return "B";
        case AlgebraName::O: return "O";
        case AlgebraName::Oprime: return "Oprime";
    }
    return "?";
}

const AlgebraTag& algebra_tag(AlgebraName name) {
    static const std::map<AlgebraName, AlgebraTag> tags = {
        {AlgebraName::C, make_tag(AlgebraName::C, {-1})},
        {AlgebraName::A, make_tag(AlgebraName::A, {+1})},
        {AlgebraName::H, make_tag(AlgebraName::H, {-1, -1})},
        {AlgebraName::B, make_tag(AlgebraName::B, {-1, +1})},
        {AlgebraName::O, make_tag(AlgebraName::O, {-1, -1, -1})},
        {AlgebraName::Oprime, make_tag(AlgebraName::Oprime, {-1, -1, +1})},
    };
    return tags.at(name);
}

const AlgebraTag& algebra_tag(const std::string& name) {
    if (name == "C") return algebra_tag(AlgebraName::C);
    if (name == "A") return algebra_tag(AlgebraName::A);
    if (name == "H") return algebra_tag(AlgebraName::H);
    if (name == "B") return algebra_tag(AlgebraName::B);
    if (name == "O") return algebra_tag(AlgebraName::O);
    if (name == "Oprime") return algebra_tag(AlgebraName::Oprime);
    throw std::invalid_argument("unknown algebra: " + name);
}

AlgebraTag cayley_dickson_double(const AlgebraTag& base, int gamma) {
    if (gamma != 1 && gamma != -1) throw std::invalid_argument("doubling sign must be +-1");
    if (base.dim > 4) throw std::invalid_argument("doubling past dimension 8 is not supported");
    std::vector<int> signs = base.doubling_signs;
    signs.push_back(gamma);
    // name the result when it is one of the six catalogued algebras
    for (AlgebraName n : {AlgebraName::C, AlgebraName::A, AlgebraName::H, AlgebraName::B,
                          AlgebraName::O, AlgebraName::Oprime}) {
        if (algebra_tag(n).doubling_signs == signs) return algebra_tag(n);
    }
    throw std::invalid_argument("doubling sequence is not one of the six catalogued algebras");
}

const MultiplicationTable& multiplication_table(AlgebraName name) {
    static std::map<AlgebraName, MultiplicationTable> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lk(m);
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, build_table(algebra_tag(name))).first;
    return it->second;
}

std::string MultiplicationTable::to_json() const {
    std::ostringstream os;
    os << "{\"algebra\":\"" << tag.str() << "\",\"dim\":" << tag.dim << ",\"entries\":[";
    for (int i = 0; i < tag.dim; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < tag.dim; ++j) {
            const auto& e = rows[i][j];
            os << (j ? "," : "") << "[" << e.index << "," << e.sign << "]";
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

AlgebraElement make_element(AlgebraName name, std::vector<double> coeffs) {
    const int d = algebra_tag(name).dim;
    if (static_cast<int>(coeffs.size()) != d)
        throw std::invalid_argument("coefficient count does not match algebra dimension");
    return AlgebraElement{name, std::move(coeffs)};
}

AlgebraElement basis_element(AlgebraName name, int index) {
    const int d = algebra_tag(name).dim;
    if (index < 0 || index >= d) throw std::invalid_argument("basis index out of range");
    std::vector<double> c(d, 0.0);
    c[index] = 1.0;
    return AlgebraElement{name, std::move(c)};
}

AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.name != y.name) throw std::invalid_argument("algebra tag mismatch in mul");
    const auto& table = multiplication_table(x.name);
    const int d = x.dim();
    std::vector<double> out(d, 0.0);
    for (int i = 0; i < d; ++i) {
        if (x.coeffs[i] == 0.0) continue;
        for (int j = 0; j < d; ++j) {
            if (y.coeffs[j] == 0.0) continue;
            const auto& e = table.at(i, j);
            out[e.index] += e.sign * x.coeffs[i] * y.coeffs[j];
        }
    }
    return AlgebraElement{x.name, std::move(out)};
}

AlgebraElement conj(const AlgebraElement& x) {
    AlgebraElement out = x;
    for (int i = 1; i < out.dim(); ++i) out.coeffs[i] = -out.coeffs[i];
    return out;
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.name != y.name) throw std::invalid_argument("algebra tag mismatch in add");
    AlgebraElement out = x;
    for (int i = 0; i < out.dim(); ++i) out.coeffs[i] += y.coeffs[i];
    return out;
}

AlgebraElement scale(double s, const AlgebraElement& x) {
    AlgebraElement out = x;
    for (double& c : out.coeffs) c *= s;
    return out;
}

double norm_form(const AlgebraElement& x) {
    // conj(x) x is real; accumulate it without forming the product
    const auto& table = multiplication_table(x.name);
    double n = 0.0;
    for (int i = 0; i < x.dim(); ++i) {
        const auto& e = table.at(i, i);
        // e_i e_i = sign e_0; conj flips the sign of imaginary e_i twice in N
        n += (i == 0 ? 1.0 : -static_cast<double>(e.sign)) * x.coeffs[i] * x.coeffs[i];
    }
    return n;
}

double inner(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.name != y.name) throw std::invalid_argument("algebra tag mismatch in inner");
    return 0.5 * (norm_form(add(x, y)) - norm_form(x) - norm_form(y));
}

double real_part(const AlgebraElement& x) { return x.coeffs[0]; }

}  // namespace hopfsub
