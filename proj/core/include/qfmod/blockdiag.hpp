#pragma once

// Block diagonalization of quadratic forms over Z/p^k by SL_n transforms.

#include "qfmod/matrix.hpp"
#include "qfmod/modring.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace qfmod {

/// A 1x1 block [d].
struct TypeI {
  Integer d;
  friend bool operator==(const TypeI&, const TypeI&) = default;
};

/// The 2x2 block 2^ell [[2a, b], [b, 2c]] with b odd (p = 2 only).
struct TypeII {
  Exponent ell = 0;
  Integer a, b, c;
  friend bool operator==(const TypeII&, const TypeII&) = default;
};

using Block = std::variant<TypeI, TypeII>;

std::size_t block_dim(const Block& blk);
Matrix block_matrix(const Block& blk);
std::string to_string(const Block& blk);

struct BlockDiagForm {
  std::vector<Block> blocks;
  /// U with det U = 1 and U'QU = direct sum of blocks (mod p^k).
  Matrix U;
  PrimePower modulus;
};

/// Deterministic for a fixed input. Odd p yields only TypeI blocks.
BlockDiagForm block_diagonalize(const QuadraticForm& q, const PrimePower& pp);

/// U'QU with entries reduced mod p^k.
QuadraticForm apply_transform(const QuadraticForm& q, const Matrix& u, const PrimePower& pp);

/// The direct-sum matrix of the blocks.
QuadraticForm blocks_to_matrix(const std::vector<Block>& blocks);
inline QuadraticForm blocks_to_matrix(const BlockDiagForm& bd) { return blocks_to_matrix(bd.blocks); }

}  // namespace qfmod
