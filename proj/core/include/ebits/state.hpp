#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace ebits {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RowMajorCMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Local dimensions (d_A, d_B, d_C).
using Dims = std::array<int, 3>;

enum class Subsystem { A, B, C, AB, AC, BC };

Subsystem parse_subsystem(std::string_view label);
std::string_view to_string(Subsystem s);

/// Unit-norm vector in C^{d_A} (x) C^{d_B} (x) C^{d_C}. Amplitudes are stored
/// with index ((a * d_B) + b) * d_C + c.
class PureTripartiteState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws InputError unless every dimension is >= 1, the amplitude count
  /// matches, and the squared norm is 1 within kNormTolerance.
  PureTripartiteState(Dims dims, CVector amplitudes);

  /// Rescales `amplitudes` to unit norm. Throws on the zero vector.
  static PureTripartiteState normalized(Dims dims, CVector amplitudes);

  const Dims& dims() const noexcept { return dims_; }
  int dim(int party) const { return dims_.at(static_cast<std::size_t>(party)); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amps_.size()); }

  const CVector& amplitudes() const noexcept { return amps_; }
  cplx operator()(int a, int b, int c) const { return amps_[static_cast<Eigen::Index>(index(a, b, c))]; }

  std::size_t index(int a, int b, int c) const noexcept {
    return (static_cast<std::size_t>(a) * static_cast<std::size_t>(dims_[1]) + static_cast<std::size_t>(b)) *
               static_cast<std::size_t>(dims_[2]) +
           static_cast<std::size_t>(c);
  }

  /// Row-major (d_A*d_B) x d_C view; row (a,b), column c.
  Eigen::Map<const RowMajorCMatrix> ab_by_c() const;
  /// Row-major d_A x (d_B*d_C) view.
  Eigen::Map<const RowMajorCMatrix> a_by_bc() const;

 private:
  Dims dims_;
  CVector amps_;
};

/// Reduced density matrix on the given subsystem, Tr_{complement} |psi><psi|.
/// For two-party labels the row index is (x * d_y + y) in subsystem order.
CMatrix marginal(const PureTripartiteState& state, Subsystem subsystem);

/// psi^{(x) m}, regrouped so that party A of the result is A_1 ... A_m
/// (copy 1 most significant), and likewise for B and C.
PureTripartiteState tensor_power(const PureTripartiteState& state, int copies);

/// (U_A^* (x) U_B^* (x) U_C^*) psi: amplitudes of `state` in the local bases
/// whose vectors are the columns of the given unitaries.
PureTripartiteState change_local_bases(const PureTripartiteState& state, const CMatrix& basis_a,
                                       const CMatrix& basis_b, const CMatrix& basis_c);

namespace states {

/// (|000> + |111>) / sqrt(2)
PureTripartiteState ghz();
/// (|100> + |010> + |001>) / sqrt(3)
PureTripartiteState w();
/// sqrt(a)|100> + sqrt(b)|010> + sqrt(c)|001>, weights renormalized.
PureTripartiteState weighted_w(double a, double b, double c);
/// |000> on three qubits.
PureTripartiteState product();
/// (|00> + |11>)/sqrt(2) on AB, |0> on C.
PureTripartiteState epr_ab();
/// Gaussian random state (complex normal amplitudes, normalized).
PureTripartiteState random(Dims dims, std::uint64_t seed);

}  // namespace states

}  // namespace ebits
