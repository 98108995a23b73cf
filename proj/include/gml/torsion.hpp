#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gml {

// Weierstrass point indices: w0, w1, wr, ws, wt, winf.
inline constexpr int kInf = 5;
const std::array<std::string, 6>& weierstrass_names();
int weierstrass_index(const std::string& name);

// A 2-torsion point: an even subset of W modulo complement, stored with the
// winf bit cleared.  Addition is symmetric difference.
class TwoTorsion {
public:
    TwoTorsion() = default;
    static TwoTorsion from_mask(unsigned mask);
    static TwoTorsion difference(int i, int j);  // [w_i] - [w_j]
    static TwoTorsion parse(const std::string& label);
    static const std::vector<TwoTorsion>& all();  // table order

    unsigned mask() const { return mask_; }
    bool is_zero() const { return mask_ == 0; }
    // the pair {i, j} with tau = [w_i] - [w_j], i < j; requires !is_zero()
    std::array<int, 2> pair() const;
    std::string to_string() const;
    int index() const;  // position in all()

    friend TwoTorsion operator+(TwoTorsion a, TwoTorsion b) { return from_mask(a.mask_ ^ b.mask_); }
    friend bool operator==(TwoTorsion a, TwoTorsion b) { return a.mask_ == b.mask_; }

private:
    unsigned mask_ = 0;
};

// Theta characteristic: odd [w_i] or even [w_i]+[w_j]-[w_k].
class ThetaChar {
public:
    static ThetaChar odd(int i);
    static ThetaChar even(int i, int j, int k);
    static ThetaChar parse(const std::string& label);
    static const std::vector<ThetaChar>& all();  // 6 odd then 10 even

    bool is_odd() const { return odd_; }
    int point() const { return point_; }
    // even: canonical triple containing w0, sorted
    std::array<int, 3> triple() const { return triple_; }
    std::string to_string() const;
    // 2-torsion points tau whose nodes lie on the plane
    std::vector<TwoTorsion> nodes() const;

private:
    bool odd_ = true;
    int point_ = 0;
    std::array<int, 3> triple_{};
};

} // namespace gml
