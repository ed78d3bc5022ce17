#pragma once

#include "gpseq/exact_real.hpp"
#include "gpseq/families.hpp"
#include "gpseq/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gpseq {

/// One factor of a catalog nilmanifold.
struct NilFactor {
    enum class Kind { torus, heisenberg };
    Kind kind = Kind::torus;
    unsigned D = 1;  // torus dimension; 3 for the Heisenberg factor
    unsigned d = 1;  // filtration degree

    friend bool operator==(const NilFactor&, const NilFactor&) = default;
};

/// A catalog nilmanifold: torus T^D with a degree-d filtration, the
/// Heisenberg 3-manifold with its lower central series, or a finite product
/// of these (used for joint orbits). Coordinates of the factors are
/// concatenated.
class NilEntry {
public:
    static NilEntry torus(unsigned D, unsigned d = 1);
    static NilEntry heisenberg();
    static NilEntry product(const NilEntry& a, const NilEntry& b);

    const std::vector<NilFactor>& factors() const noexcept { return factors_; }
    unsigned dim() const;
    unsigned step() const;
    unsigned degree() const;
    /// dim G_i for i = 0..degree()+1.
    std::vector<unsigned> subgroup_dims() const;
    /// True for coordinates that survive in the abelianisation.
    std::vector<bool> horizontal() const;
    std::string name() const;

    friend bool operator==(const NilEntry&, const NilEntry&) = default;

private:
    std::vector<NilFactor> factors_;
};

/// Element of G in Mal'cev coordinates of the second kind.
struct GroupElement {
    NilEntry entry;
    std::vector<ExactReal> coords;
};

/// Point of G/Gamma with coordinates reduced to [0,1).
struct NilPoint {
    NilEntry entry;
    std::vector<ExactReal> coords;
};

GroupElement identity(const NilEntry& entry);
GroupElement group_mul(const GroupElement& a, const GroupElement& b);
GroupElement group_inv(const GroupElement& a);
/// a^n for any integer n.
GroupElement group_pow_binomial(const GroupElement& a, const Integer& n);
bool operator==(const GroupElement& a, const GroupElement& b);
std::ostream& operator<<(std::ostream& os, const GroupElement& g);

/// g * gamma with gamma in Gamma chosen so every coordinate lies in [0,1).
/// Heisenberg coordinates are fixed in the order x, y, z.
std::pair<NilPoint, std::vector<Integer>> reduce(const GroupElement& g);
GroupElement as_element(const NilPoint& p);

/// g(n) = g_0 g_1^n g_2^C(n,2) ... g_d^C(n,d) with g_i in G_i.
class PolySequence {
public:
    PolySequence(NilEntry entry, std::vector<GroupElement> g);

    const NilEntry& entry() const noexcept { return entry_; }
    const std::vector<GroupElement>& terms() const noexcept { return g_; }
    GroupElement at(const Integer& n) const;

private:
    NilEntry entry_;
    std::vector<GroupElement> g_;
};

/// Points g(a*n + b) Gamma for n = 0..N-1.
std::vector<NilPoint> orbit(const PolySequence& g, std::uint64_t N, std::uint64_t a = 1, std::uint64_t b = 0);

/// eta(x) = sum_j k_j x_j over the coordinates of the entry; components on
/// non-horizontal coordinates must be zero.
struct HorizontalCharacter {
    NilEntry entry;
    std::vector<Integer> k;

    Integer norm() const;
};

/// eta o g in the binomial basis.
RealPolynomial char_compose(const HorizontalCharacter& eta, const PolySequence& g);

/// Right-invariant metric on G/Gamma. Torus: max circle distance per
/// coordinate. Heisenberg: quotient of the gauge
///   N(x, y, z) = max(|x|, |y|, sqrt(1 + 2|z - xy/2|) - 1)
/// taken over g h^-1. Products use the max over factors.
double metric(const NilPoint& x, const NilPoint& y);
/// Same metric on floating-point coordinates.
double metric(const NilEntry& entry, const double* x, const double* y);
/// Haar volume of the open metric ball of radius r (valid for r <= 1/4).
double ball_volume(const NilEntry& entry, double r);
/// Integral of max(0, 1 - d(x, z)/rho) over G/Gamma (rho <= 1/4).
double tent_integral(const NilEntry& entry, double rho);

std::vector<double> to_doubles(const NilPoint& p);

/// Polynomial in the coordinates: sum of coeff * prod_j x_j^exps[j].
struct CoordPolynomial {
    struct Term {
        std::vector<unsigned> exps;
        ExactReal coeff;
    };
    std::vector<Term> terms;

    static CoordPolynomial constant(const ExactReal& c);
    ExactReal eval(const std::vector<ExactReal>& x) const;
};

/// Half-open box prod_j [lo_j, hi_j).
struct Box {
    std::vector<ExactReal> lo;
    std::vector<ExactReal> hi;

    bool contains(const std::vector<ExactReal>& x) const;
};

/// Map [0,1)^D -> R that is polynomial on finitely many disjoint boxes and
/// equal to a default polynomial elsewhere.
class PiecewisePoly {
public:
    PiecewisePoly(unsigned dim, std::vector<std::pair<Box, CoordPolynomial>> pieces, CoordPolynomial otherwise);

    unsigned dim() const noexcept { return dim_; }
    ExactReal eval(const std::vector<ExactReal>& x) const;

private:
    unsigned dim_;
    std::vector<std::pair<Box, CoordPolynomial>> pieces_;
    CoordPolynomial otherwise_;
};

ExactReal piecewise_eval(const PiecewisePoly& F, const NilPoint& x);

struct RepresentationReport {
    bool matches = true;
    std::uint64_t checked = 0;
    std::optional<std::uint64_t> first_mismatch;
    std::optional<Value> expected;
    std::optional<Value> actual;
};

/// Compares f(n) with F(g(n) Gamma) for n = 1..N.
RepresentationReport representation_check(const SequenceSource& f, const PolySequence& g, const PiecewisePoly& F,
                                          std::uint64_t N);

} // namespace gpseq
