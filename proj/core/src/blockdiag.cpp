#include "qfmod/blockdiag.hpp"

#include "qfmod/errors.hpp"

#include <optional>
#include <utility>

namespace qfmod {

std::size_t block_dim(const Block& blk) { return std::holds_alternative<TypeI>(blk) ? 1 : 2; }

Matrix block_matrix(const Block& blk) {
  if (const auto* b1 = std::get_if<TypeI>(&blk)) {
    Matrix m(1, 1);
    m(0, 0) = b1->d;
    return m;
  }
  const auto& b2 = std::get<TypeII>(blk);
  const Integer scale = ipow(Integer{2}, b2.ell);
  Matrix m(2, 2);
  m(0, 0) = 2 * scale * b2.a;
  m(0, 1) = scale * b2.b;
  m(1, 0) = scale * b2.b;
  m(1, 1) = 2 * scale * b2.c;
  return m;
}

std::string to_string(const Block& blk) {
  if (const auto* b1 = std::get_if<TypeI>(&blk)) return "I(" + b1->d.get_str() + ")";
  const auto& b2 = std::get<TypeII>(blk);
  return "II(" + std::to_string(b2.ell) + "; " + b2.a.get_str() + ", " + b2.b.get_str() + ", " +
         b2.c.get_str() + ")";
}

namespace {

// Working state: M tracks U'QU as U is built up from elementary steps.
class Reducer {
 public:
  Reducer(const QuadraticForm& q, const PrimePower& pp)
      : pp_{pp}, n_{q.dim()}, m_{q.matrix().reduced(pp.modulus())}, u_{Matrix::identity(n_)} {}

  Exponent order(std::size_t i, std::size_t j) const {
    const Integer& v = m_(i, j);
    if (v == 0) return pp_.k();
    return valuation(pp_, v).ord.value();
  }

  // Column dst += f * column src, applied as a congruence.
  void add_multiple(std::size_t dst, std::size_t src, const Integer& f) {
    const Integer& q = pp_.modulus();
    for (std::size_t r = 0; r < n_; ++r) {
      u_(r, dst) = mod(u_(r, dst) + f * u_(r, src), q);
      m_(r, dst) = mod(m_(r, dst) + f * m_(r, src), q);
    }
    for (std::size_t c = 0; c < n_; ++c) m_(dst, c) = mod(m_(dst, c) + f * m_(src, c), q);
  }

  // e_i <-> e_j with one sign flip so that det stays 1.
  void signed_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    const Integer& q = pp_.modulus();
    for (std::size_t r = 0; r < n_; ++r) {
      std::swap(u_(r, i), u_(r, j));
      std::swap(m_(r, i), m_(r, j));
    }
    for (std::size_t c = 0; c < n_; ++c) std::swap(m_(i, c), m_(j, c));
    for (std::size_t r = 0; r < n_; ++r) {
      u_(r, j) = mod(-u_(r, j), q);
      m_(r, j) = mod(-m_(r, j), q);
    }
    for (std::size_t c = 0; c < n_; ++c) m_(j, c) = mod(-m_(j, c), q);
  }

  BlockDiagForm run() {
    std::vector<Block> blocks;
    std::size_t pos = 0;
    while (pos < n_) {
      auto [i, j, o] = pivot(pos);
      if (o >= pp_.k()) {
        for (; pos < n_; ++pos) blocks.push_back(TypeI{Integer{0}});
        break;
      }
      if (i != j && !pp_.is_two()) {
        // 2 Q_ij has order o while Q_ii and Q_jj are deeper.
        add_multiple(i, j, Integer{1});
        j = i;
      }
      if (i == j) {
        signed_swap(pos, i);
        eliminate_single(pos, o);
        blocks.push_back(TypeI{m_(pos, pos)});
        pos += 1;
      } else {
        signed_swap(pos, i);
        if (j == pos) j = i;
        signed_swap(pos + 1, j);
        blocks.push_back(eliminate_pair(pos, o));
        pos += 2;
      }
    }
    return BlockDiagForm{std::move(blocks), std::move(u_), pp_};
  }

 private:
  struct Pivot {
    std::size_t i, j;
    Exponent o;
  };

  Pivot pivot(std::size_t pos) const {
    std::optional<Pivot> diag, off;
    for (std::size_t i = pos; i < n_; ++i) {
      for (std::size_t j = i; j < n_; ++j) {
        const Exponent o = order(i, j);
        auto& slot = (i == j) ? diag : off;
        if (!slot || o < slot->o) slot = Pivot{i, j, o};
      }
    }
    if (!off || diag->o <= off->o) return *diag;
    return *off;
  }

  void eliminate_single(std::size_t pos, Exponent o) {
    const Integer scale = pp_.power(o);
    const Integer unit_inv = inverse(pp_, m_(pos, pos) / scale);
    for (std::size_t j = pos + 1; j < n_; ++j) {
      if (m_(pos, j) == 0) continue;
      const Integer f = mod(-(m_(pos, j) / scale) * unit_inv, pp_.modulus());
      add_multiple(j, pos, f);
    }
  }

  TypeII eliminate_pair(std::size_t pos, Exponent o) {
    const std::size_t nxt = pos + 1;
    const Integer scale = pp_.power(o);
    const Integer q = pp_.power(pp_.k() - o);
    // B / 2^o = [[2a, b], [b, 2c]] has odd determinant.
    const Integer x = m_(pos, pos) / scale;
    const Integer y = m_(pos, nxt) / scale;
    const Integer z = m_(nxt, nxt) / scale;
    const Integer det_inv = inverse_mod(mod(x * z - y * y, q), q);
    for (std::size_t j = pos + 2; j < n_; ++j) {
      const Integer r1 = m_(pos, j) / scale;
      const Integer r2 = m_(nxt, j) / scale;
      if (r1 == 0 && r2 == 0) continue;
      const Integer s1 = mod((z * r1 - y * r2) * det_inv, q);
      const Integer s2 = mod((x * r2 - y * r1) * det_inv, q);
      add_multiple(j, pos, -s1);
      add_multiple(j, nxt, -s2);
    }
    TypeII blk;
    blk.ell = o;
    blk.a = m_(pos, pos) / (2 * scale);
    blk.b = m_(pos, nxt) / scale;
    blk.c = m_(nxt, nxt) / (2 * scale);
    return blk;
  }

  const PrimePower& pp_;
  std::size_t n_;
  Matrix m_;
  Matrix u_;
};

}  // namespace

BlockDiagForm block_diagonalize(const QuadraticForm& q, const PrimePower& pp) {
  return Reducer{q, pp}.run();
}

QuadraticForm apply_transform(const QuadraticForm& q, const Matrix& u, const PrimePower& pp) {
  if (u.rows() != q.dim() || !u.is_square()) throw DomainError("apply_transform: dimension mismatch");
  return QuadraticForm{(u.transpose() * q.matrix() * u).reduced(pp.modulus())};
}

QuadraticForm blocks_to_matrix(const std::vector<Block>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += block_dim(b);
  Matrix m(n, n);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    const Matrix bm = block_matrix(b);
    for (std::size_t i = 0; i < bm.rows(); ++i)
      for (std::size_t j = 0; j < bm.cols(); ++j) m(at + i, at + j) = bm(i, j);
    at += bm.rows();
  }
  return QuadraticForm{std::move(m)};
}

}  // namespace qfmod
