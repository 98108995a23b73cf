#include "gml/torsion.hpp"

#include <algorithm>
#include <bit>

#include "gml/error.hpp"

namespace gml {

const std::array<std::string, 6>& weierstrass_names() {
    static const std::array<std::string, 6> names{"w0", "w1", "wr", "ws", "wt", "winf"};
    return names;
}

int weierstrass_index(const std::string& name) {
    const auto& n = weierstrass_names();
    for (int i = 0; i < 6; ++i)
        if (n[std::size_t(i)] == name) return i;
    if (name == "w_inf" || name == "wi" || name == "w∞") return kInf;
    raise(Errc::InvalidLabel, "unknown Weierstrass point '" + name + "'");
}

TwoTorsion TwoTorsion::from_mask(unsigned mask) {
    mask &= 0x3Fu;
    if (std::popcount(mask) % 2 != 0) raise(Errc::InvalidLabel, "odd subset is not a 2-torsion point");
    if (mask & (1u << kInf)) mask ^= 0x3Fu;
    TwoTorsion t;
    t.mask_ = mask;
    return t;
}

TwoTorsion TwoTorsion::difference(int i, int j) {
    if (i < 0 || i > 5 || j < 0 || j > 5) raise(Errc::InvalidLabel, "Weierstrass index out of range");
    if (i == j) return TwoTorsion();
    return from_mask((1u << i) | (1u << j));
}

const std::vector<TwoTorsion>& TwoTorsion::all() {
    static const std::vector<TwoTorsion> table = [] {
        std::vector<TwoTorsion> v{TwoTorsion()};
        for (int i = 0; i < 5; ++i) v.push_back(difference(i, kInf));
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) v.push_back(difference(i, j));
        return v;
    }();
    return table;
}

int TwoTorsion::index() const {
    const auto& a = all();
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] == *this) return int(k);
    return -1;
}

std::array<int, 2> TwoTorsion::pair() const {
    if (is_zero()) raise(Errc::InvalidLabel, "zero has no pair");
    unsigned m = mask_;
    if (std::popcount(m) == 4) m = (m ^ 0x3Fu);
    std::array<int, 2> out{};
    int k = 0;
    for (int i = 0; i < 6; ++i)
        if (m & (1u << i)) out[std::size_t(k++)] = i;
    return out;
}

std::string TwoTorsion::to_string() const {
    if (is_zero()) return "0";
    auto p = pair();
    return weierstrass_names()[std::size_t(p[0])] + "-" + weierstrass_names()[std::size_t(p[1])];
}

// Accepts "0" and "wi-wj".
TwoTorsion TwoTorsion::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (c != ' ' && c != '[' && c != ']') s += c;
    if (s == "0" || s == "E0") return TwoTorsion();
    auto dash = s.find('-');
    if (dash == std::string::npos) raise(Errc::InvalidLabel, "bad 2-torsion label '" + raw + "'");
    int i = weierstrass_index(s.substr(0, dash)), j = weierstrass_index(s.substr(dash + 1));
    return difference(i, j);
}

ThetaChar ThetaChar::odd(int i) {
    if (i < 0 || i > 5) raise(Errc::InvalidLabel, "Weierstrass index out of range");
    ThetaChar t;
    t.odd_ = true;
    t.point_ = i;
    return t;
}

ThetaChar ThetaChar::even(int i, int j, int k) {
    std::array<int, 3> tr{i, j, k};
    for (int x : tr)
        if (x < 0 || x > 5) raise(Errc::InvalidLabel, "Weierstrass index out of range");
    if (i == j || j == k || i == k) raise(Errc::InvalidLabel, "even characteristic needs three distinct points");
    if (std::find(tr.begin(), tr.end(), 0) == tr.end()) {
        std::array<int, 3> comp{};
        int n = 0;
        for (int x = 0; x < 6; ++x)
            if (x != i && x != j && x != k) comp[std::size_t(n++)] = x;
        tr = comp;
    }
    std::sort(tr.begin(), tr.end());
    ThetaChar t;
    t.odd_ = false;
    t.triple_ = tr;
    return t;
}

const std::vector<ThetaChar>& ThetaChar::all() {
    static const std::vector<ThetaChar> table = [] {
        std::vector<ThetaChar> v;
        for (int i = 0; i < 6; ++i) v.push_back(odd(i));
        for (int j = 1; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k) v.push_back(even(0, j, k));
        return v;
    }();
    return table;
}

std::string ThetaChar::to_string() const {
    const auto& n = weierstrass_names();
    if (odd_) return n[std::size_t(point_)];
    return n[std::size_t(triple_[0])] + "+" + n[std::size_t(triple_[1])] + "-" + n[std::size_t(triple_[2])];
}

// Accepts "wi" and "wi+wj-wk".
ThetaChar ThetaChar::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (c != ' ' && c != '[' && c != ']') s += c;
    auto plus = s.find('+');
    if (plus == std::string::npos) return odd(weierstrass_index(s));
    auto minus = s.find('-', plus);
    if (minus == std::string::npos) raise(Errc::InvalidLabel, "bad theta label '" + raw + "'");
    return even(weierstrass_index(s.substr(0, plus)), weierstrass_index(s.substr(plus + 1, minus - plus - 1)),
                weierstrass_index(s.substr(minus + 1)));
}

std::vector<TwoTorsion> ThetaChar::nodes() const {
    std::vector<TwoTorsion> out;
    if (odd_) {
        for (int j = 0; j < 6; ++j) out.push_back(TwoTorsion::difference(point_, j));
        return out;
    }
    std::array<int, 3> comp{};
    int n = 0;
    for (int x = 0; x < 6; ++x)
        if (x != triple_[0] && x != triple_[1] && x != triple_[2]) comp[std::size_t(n++)] = x;
    for (const auto& tr : {triple_, comp}) {
        out.push_back(TwoTorsion::difference(tr[0], tr[1]));
        out.push_back(TwoTorsion::difference(tr[1], tr[2]));
        out.push_back(TwoTorsion::difference(tr[0], tr[2]));
    }
    return out;
}

} // namespace gml
