#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sepkit/hull.hpp"
#include "sepkit/types.hpp"

namespace sepkit {

enum class Family { MaxEntangled, RhoAQubit, RhoAQudit, Ghz, Mixture };
enum class Validity { Proven, ConditionallyValid, Unverified };

std::string_view to_string(Family f);
std::string_view to_string(Validity v);

/// A nearest separable density together with the state it is nearest to.
struct NearestResult {
  Density rho;
  Density tau0;
  double measure;  ///< Frobenius distance ||rho - tau0||
  Family family;
  Validity validity;
};

/// <<rho - tau0, tau - tau0>>; non-positive for every separable tau exactly
/// when tau0 is the nearest separable density, zero on the face.
double face_residual(const ComplexMatrix& rho, const ComplexMatrix& tau0, const ComplexMatrix& tau);

// -- maximally entangled bipartite states ----------------------------------

/// tau0 = (1 - s) D0 + s rho0(d), s = 1 / (d + 1); m = sqrt(1 - 2 / (d + 1)).
NearestResult nearest_max_entangled(int d);

/// alpha (x) conj(alpha): an extreme point of the nearest face of rho0(d).
ProductKet face_extreme_bipartite(int d, const ComplexVector& alpha);

// -- rho_a, two qubits -----------------------------------------------------

/// rho_a + 2 a0 a1 (tau0 - rho0) without any region check.
ComplexMatrix qubit_parallel_candidate(const AmplitudeVector& a);

/// Nearest separable density to rho_a for d = 2 inside the region
/// 3 a0 a1 >= 1 (equivalently |a0^2 - 1/2| <= sqrt(5)/6). Throws RegionError
/// outside it. m = 2 a0 a1 / sqrt(3).
NearestResult nearest_rho_a_qubit(const AmplitudeVector& a);

// -- rho_a, two qudits -----------------------------------------------------

/// +1 at (jk, jk) and (kj, kj), -1 at (jj, kk) and (kk, jj).
ComplexMatrix m_jk(int d, int j, int k);

struct QuditAdjustment {
  double t = 0;
  std::map<std::pair<int, int>, double> u;  ///< u_jk = (a_j a_k - t / d) / 2
};

QuditAdjustment qudit_adjustment(const AmplitudeVector& a);

/// rho_a + t (tau0 - rho0) + sum_{j<k} u_jk M_jk without any region check.
ComplexMatrix qudit_candidate(const AmplitudeVector& a);

/// sqrt(t^2 (1 - 2 / (1 + d)) + 4 sum u_jk^2)
double qudit_measure(const QuditAdjustment& adj, int d);

struct QuditNearest {
  NearestResult nearest;
  QuditAdjustment adjustment;
  FeasibilityResult membership;
};

/// Requires a_{d-1}^2 >= 2 a*a / (d (d + 1)) (RegionError otherwise). The
/// result is Proven when hull membership certifies the candidate lies on the
/// face, ConditionallyValid otherwise.
QuditNearest nearest_rho_a_qudit(const AmplitudeVector& a);

// -- n-qubit GHZ -----------------------------------------------------------

/// Diagonal b_n except a_n at the two corners of the diagonal, b_n at the two
/// off-diagonal corners; r = 2^{n-1}, a_n = (r^2 - 2r + 2) / (2r^2 - 2r + 2),
/// b_n = 1 / (2r^2 - 2r + 2). m = sqrt((1 - 1 / (r^2 - r + 1)) / 2).
NearestResult ghz_nearest(int n);

/// Factors (e^{i phi_k/2}|0> + e^{-i phi_k/2}|1>)/sqrt(2); requires
/// sum phi_k = 0 mod 2 pi.
ProductKet ghz_face_extreme(int n, std::span<const double> phis);

enum class GhzCorner { AllZeros, AllOnes };
ProductKet ghz_face_corner(int n, GhzCorner corner);

/// F(tau) = 1 - prod r_k(0)^2 - prod r_k(1)^2 - (2^n - 2) prod r_k(0) r_k(1) cos(Phi)
/// for an n-qubit product ket.
double ghz_f_value(const ProductKet& ket);

/// The 2^{n-1} - 1 complementary-pair groups whose sum is F(tau); each is
/// non-negative.
std::vector<double> ghz_f_groups(const ProductKet& ket);

// -- verification ----------------------------------------------------------

struct VerifyOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
  double tolerance = 1e-10;
  std::vector<ProductKet> extra_candidates;  ///< e.g. known face extreme points
};

struct VerifyReport {
  double max_residual;
  std::optional<ProductKet> worst;  ///< the maximizing product ket
  std::size_t evaluated;
  std::uint64_t seed;
  bool pass;
};

/// Samples product projections (computational basis, extra candidates, Haar
/// kets) and reports the largest <<rho - tau0, tau - tau0>>.
VerifyReport verify_nearest(const Density& rho, const Density& tau0, const VerifyOptions& options = {});

/// Known face extreme points for a closed-form result, for use as
/// extra_candidates.
std::vector<ProductKet> face_candidates(const NearestResult& r, std::uint64_t seed = 0, int random_count = 16);

/// Nearest density of t rho0 + (1 - t) rho1 when each tau lies on the other's
/// face: t tau0 + (1 - t) tau1. Throws PreconditionError otherwise.
NearestResult measure_convexity_check(const NearestResult& first, const NearestResult& second, double t,
                                      double face_tol = 1e-10);

}  // namespace sepkit
