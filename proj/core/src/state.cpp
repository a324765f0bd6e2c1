#include "ebits/state.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/SparseCore>

#include "ebits/errors.hpp"

namespace ebits {

Subsystem parse_subsystem(std::string_view label) {
  if (label == "A") return Subsystem::A;
  if (label == "B") return Subsystem::B;
  if (label == "C") return Subsystem::C;
  if (label == "AB") return Subsystem::AB;
  if (label == "AC") return Subsystem::AC;
  if (label == "BC") return Subsystem::BC;
  throw InputError("unknown subsystem label '" + std::string(label) + "'");
}

std::string_view to_string(Subsystem s) {
  switch (s) {
    case Subsystem::A: return "A";
    case Subsystem::B: return "B";
    case Subsystem::C: return "C";
    case Subsystem::AB: return "AB";
    case Subsystem::AC: return "AC";
    case Subsystem::BC: return "BC";
  }
  return "?";
}

namespace {

std::size_t checked_total(const Dims& dims) {
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 1) throw InputError("local dimensions must be >= 1");
    total *= static_cast<std::size_t>(d);
  }
  return total;
}

}  // namespace

PureTripartiteState::PureTripartiteState(Dims dims, CVector amplitudes)
    : dims_(dims), amps_(std::move(amplitudes)) {
  if (checked_total(dims_) != static_cast<std::size_t>(amps_.size())) {
    throw InputError("amplitude count does not match d_A*d_B*d_C");
  }
  const double norm2 = amps_.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
    throw InputError("state is not normalized (squared norm " + std::to_string(norm2) + ")");
  }
}

PureTripartiteState PureTripartiteState::normalized(Dims dims, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InputError("cannot normalize a zero or non-finite vector");
  amplitudes /= norm;
  return PureTripartiteState(dims, std::move(amplitudes));
}

Eigen::Map<const RowMajorCMatrix> PureTripartiteState::ab_by_c() const {
  return {amps_.data(), static_cast<Eigen::Index>(dims_[0]) * dims_[1], dims_[2]};
}

Eigen::Map<const RowMajorCMatrix> PureTripartiteState::a_by_bc() const {
  return {amps_.data(), dims_[0], static_cast<Eigen::Index>(dims_[1]) * dims_[2]};
}

namespace {

// Tr_complement |psi><psi| as M M^* with M sparse: rows index the kept
// parties, columns the traced-out ones.
CMatrix sparse_marginal(const PureTripartiteState& state, Subsystem subsystem) {
  const auto [da, db, dc] = state.dims();
  const auto row_col = [&](int a, int b, int c) -> std::pair<Eigen::Index, Eigen::Index> {
    switch (subsystem) {
      case Subsystem::A: return {a, static_cast<Eigen::Index>(b) * dc + c};
      case Subsystem::B: return {b, static_cast<Eigen::Index>(a) * dc + c};
      case Subsystem::C: return {c, static_cast<Eigen::Index>(a) * db + b};
      case Subsystem::AB: return {static_cast<Eigen::Index>(a) * db + b, c};
      case Subsystem::AC: return {static_cast<Eigen::Index>(a) * dc + c, b};
      case Subsystem::BC: return {static_cast<Eigen::Index>(b) * dc + c, a};
    }
    return {0, 0};
  };
  Eigen::Index rows = 0;
  switch (subsystem) {
    case Subsystem::A: rows = da; break;
    case Subsystem::B: rows = db; break;
    case Subsystem::C: rows = dc; break;
    case Subsystem::AB: rows = static_cast<Eigen::Index>(da) * db; break;
    case Subsystem::AC: rows = static_cast<Eigen::Index>(da) * dc; break;
    case Subsystem::BC: rows = static_cast<Eigen::Index>(db) * dc; break;
  }
  const Eigen::Index cols = static_cast<Eigen::Index>(state.size()) / rows;
  std::vector<Eigen::Triplet<cplx>> triplets;
  const CVector& amps = state.amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if (amps[i] == cplx{}) continue;
    const int c = static_cast<int>(i % dc);
    const int b = static_cast<int>((i / dc) % db);
    const int a = static_cast<int>(i / (static_cast<Eigen::Index>(dc) * db));
    const auto [r, col] = row_col(a, b, c);
    triplets.emplace_back(r, col, amps[i]);
  }
  Eigen::SparseMatrix<cplx> m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::SparseMatrix<cplx> mm = m * Eigen::SparseMatrix<cplx>(m.adjoint());
  return CMatrix(mm);
}

}  // namespace

CMatrix marginal(const PureTripartiteState& state, Subsystem subsystem) {
  const auto [da, db, dc] = state.dims();
  const auto nonzeros = (state.amplitudes().array() != cplx{}).count();
  if (state.size() > 4096 && static_cast<std::size_t>(nonzeros) * 8 < state.size()) {
    return sparse_marginal(state, subsystem);
  }
  switch (subsystem) {
    case Subsystem::A: {
      const auto x = state.a_by_bc();
      return x * x.adjoint();
    }
    case Subsystem::BC: {
      const auto x = state.a_by_bc();
      return x.transpose() * x.conjugate();
    }
    case Subsystem::AB: {
      const auto y = state.ab_by_c();
      return y * y.adjoint();
    }
    case Subsystem::C: {
      const auto y = state.ab_by_c();
      return y.transpose() * y.conjugate();
    }
    case Subsystem::B:
    case Subsystem::AC: {
      // rows b, columns (a, c)
      CMatrix m(db, static_cast<Eigen::Index>(da) * dc);
      for (int a = 0; a < da; ++a)
        for (int b = 0; b < db; ++b)
          for (int c = 0; c < dc; ++c) m(b, static_cast<Eigen::Index>(a) * dc + c) = state(a, b, c);
      if (subsystem == Subsystem::B) return m * m.adjoint();
      return m.transpose() * m.conjugate();
    }
  }
  throw InputError("unknown subsystem");
}

PureTripartiteState tensor_power(const PureTripartiteState& state, int copies) {
  if (copies < 1) throw InputError("tensor_power needs at least one copy");
  Dims dims = state.dims();
  CVector amps = state.amplitudes();
  const Dims base = state.dims();
  for (int k = 1; k < copies; ++k) {
    const Dims next{dims[0] * base[0], dims[1] * base[1], dims[2] * base[2]};
    CVector out = CVector::Zero(static_cast<Eigen::Index>(checked_total(next)));
    for (int a = 0; a < dims[0]; ++a)
      for (int b = 0; b < dims[1]; ++b)
        for (int c = 0; c < dims[2]; ++c) {
          const cplx x = amps[(static_cast<Eigen::Index>(a) * dims[1] + b) * dims[2] + c];
          if (x == cplx{}) continue;
          for (int a2 = 0; a2 < base[0]; ++a2)
            for (int b2 = 0; b2 < base[1]; ++b2)
              for (int c2 = 0; c2 < base[2]; ++c2) {
                const cplx y = state(a2, b2, c2);
                if (y == cplx{}) continue;
                const Eigen::Index ia = static_cast<Eigen::Index>(a) * base[0] + a2;
                const Eigen::Index ib = static_cast<Eigen::Index>(b) * base[1] + b2;
                const Eigen::Index ic = static_cast<Eigen::Index>(c) * base[2] + c2;
                out[(ia * next[1] + ib) * next[2] + ic] = x * y;
              }
        }
    dims = next;
    amps = std::move(out);
  }
  return PureTripartiteState::normalized(dims, std::move(amps));
}

PureTripartiteState change_local_bases(const PureTripartiteState& state, const CMatrix& basis_a,
                                       const CMatrix& basis_b, const CMatrix& basis_c) {
  const auto [da, db, dc] = state.dims();
  if (basis_a.rows() != da || basis_a.cols() != da || basis_b.rows() != db || basis_b.cols() != db ||
      basis_c.rows() != dc || basis_c.cols() != dc) {
    throw InputError("basis matrices must be square and match the local dimensions");
  }
  // Contract one leg at a time: psi'(x,y,z) = sum conj(U_A(a,x)) conj(U_B(b,y)) conj(U_C(c,z)) psi(a,b,c)
  CVector t1(static_cast<Eigen::Index>(state.size()));
  for (int b = 0; b < db; ++b)
    for (int c = 0; c < dc; ++c)
      for (int x = 0; x < da; ++x) {
        cplx s{};
        for (int a = 0; a < da; ++a) s += std::conj(basis_a(a, x)) * state(a, b, c);
        t1[(static_cast<Eigen::Index>(x) * db + b) * dc + c] = s;
      }
  CVector t2(t1.size());
  for (int x = 0; x < da; ++x)
    for (int c = 0; c < dc; ++c)
      for (int y = 0; y < db; ++y) {
        cplx s{};
        for (int b = 0; b < db; ++b) s += std::conj(basis_b(b, y)) * t1[(static_cast<Eigen::Index>(x) * db + b) * dc + c];
        t2[(static_cast<Eigen::Index>(x) * db + y) * dc + c] = s;
      }
  Eigen::Map<RowMajorCMatrix> m2(t2.data(), static_cast<Eigen::Index>(da) * db, dc);
  RowMajorCMatrix m3 = m2 * basis_c.conjugate();
  CVector out = Eigen::Map<CVector>(m3.data(), m3.size());
  return PureTripartiteState::normalized(state.dims(), std::move(out));
}

namespace states {

namespace {
PureTripartiteState from_terms(Dims dims, std::initializer_list<std::pair<std::array<int, 3>, cplx>> terms) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dims[0]) * dims[1] * dims[2]);
  for (const auto& [idx, value] : terms) {
    amps[(static_cast<Eigen::Index>(idx[0]) * dims[1] + idx[1]) * dims[2] + idx[2]] = value;
  }
  return PureTripartiteState::normalized(dims, std::move(amps));
}
}  // namespace

PureTripartiteState ghz() { return from_terms({2, 2, 2}, {{{0, 0, 0}, 1.0}, {{1, 1, 1}, 1.0}}); }

PureTripartiteState w() { return from_terms({2, 2, 2}, {{{1, 0, 0}, 1.0}, {{0, 1, 0}, 1.0}, {{0, 0, 1}, 1.0}}); }

PureTripartiteState weighted_w(double a, double b, double c) {
  if (a < 0 || b < 0 || c < 0) throw InputError("weighted W weights must be nonnegative");
  return from_terms({2, 2, 2},
                    {{{1, 0, 0}, std::sqrt(a)}, {{0, 1, 0}, std::sqrt(b)}, {{0, 0, 1}, std::sqrt(c)}});
}

PureTripartiteState product() { return from_terms({2, 2, 2}, {{{0, 0, 0}, 1.0}}); }

PureTripartiteState epr_ab() { return from_terms({2, 2, 1}, {{{0, 0, 0}, 1.0}, {{1, 1, 0}, 1.0}}); }

PureTripartiteState random(Dims dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector amps(static_cast<Eigen::Index>(checked_total(dims)));
  for (auto& x : amps) x = cplx(normal(rng), normal(rng));
  return PureTripartiteState::normalized(dims, std::move(amps));
}

}  // namespace states

}  // namespace ebits
