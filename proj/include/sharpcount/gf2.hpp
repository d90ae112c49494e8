#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sharpcount/bitvector.hpp"

namespace sharpcount {

/// Linear system A x = b over GF(2) with m rows and n columns. Column j is
/// variable j + 1. Copies and prefixes share one immutable row store.
class Gf2System {
 public:
  explicit Gf2System(std::size_t numColumns);
  Gf2System(std::size_t numColumns, std::vector<BitVector> rows, BitVector rhs);

  std::size_t numColumns() const { return numColumns_; }
  std::size_t numRows() const { return numRows_; }
  const BitVector& row(std::size_t i) const { return storage_->rows[i]; }
  bool rhs(std::size_t i) const { return storage_->rhs.get(i); }

  /// The first `rows` equations, sharing storage with this system.
  Gf2System prefix(std::size_t rows) const;

  bool satisfiedBy(const BitVector& x) const;

  /// One row per line: the coefficient bits, then "| b".
  std::string dump() const;

  /// True if both views read the same row store.
  bool sharesStorageWith(const Gf2System& other) const { return storage_ == other.storage_; }

 private:
  struct Storage {
    std::vector<BitVector> rows;
    BitVector rhs;
  };

  Gf2System(std::shared_ptr<const Storage> storage, std::size_t numColumns, std::size_t numRows)
      : storage_(std::move(storage)), numColumns_(numColumns), numRows_(numRows) {}

  std::shared_ptr<const Storage> storage_;
  std::size_t numColumns_;
  std::size_t numRows_;
};

/// m x n system with independent fair-coin entries in A and b.
Gf2System randomSystem(std::size_t numRows, std::size_t numColumns, std::uint64_t seed);

/// Square n x n random system.
Gf2System randomSystem(std::size_t n, std::uint64_t seed);

/// Reduced row echelon form of a system.
class EchelonForm {
 public:
  std::size_t numColumns() const { return numColumns_; }
  std::size_t rank() const { return pivotColumns_.size(); }
  bool consistent() const { return consistent_; }

  /// Pivot column of reduced row i, for i < rank().
  std::span<const std::size_t> pivotColumns() const { return pivotColumns_; }
  std::span<const std::size_t> freeColumns() const { return freeColumns_; }
  std::span<const BitVector> rows() const { return rows_; }
  bool rhs(std::size_t i) const { return rhs_.get(i); }

  /// log2 of the solution count, n - rank, when consistent.
  std::size_t solutionCountLog2() const { return numColumns_ - rank(); }

  /// The solution with every free variable set to 0.
  std::optional<BitVector> particularSolution() const;

  /// For free column j: the change to x when x_j flips and the pivots follow.
  std::span<const BitVector> freeColumnMasks() const { return freeMasks_; }

 private:
  friend EchelonForm eliminate(const Gf2System& system);

  std::size_t numColumns_ = 0;
  bool consistent_ = true;
  std::vector<std::size_t> pivotColumns_;
  std::vector<std::size_t> freeColumns_;
  std::vector<BitVector> rows_;
  BitVector rhs_;
  std::vector<BitVector> freeMasks_;
};

/// Gauss-Jordan elimination on a copy of the system.
EchelonForm eliminate(const Gf2System& system);

/// Lists all 2^(n - r) solutions, sweeping the free variables in Gray-code
/// order so consecutive solutions differ by one free-column mask.
class SolutionEnumerator {
 public:
  explicit SolutionEnumerator(const EchelonForm& form);

  /// Next solution, or nullptr when exhausted. The pointer is valid until
  /// the following call.
  const BitVector* next();

  std::uint64_t produced() const { return produced_; }

 private:
  const EchelonForm* form_;
  BitVector current_;
  std::uint64_t produced_ = 0;
  std::uint64_t total_ = 0;
};

/// Uniform draw from the solution set, or nullopt if inconsistent.
std::optional<BitVector> sampleSolution(const EchelonForm& form, std::uint64_t seed);

}  // namespace sharpcount
