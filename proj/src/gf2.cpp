#include "sharpcount/gf2.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "sharpcount/rng.hpp"

namespace sharpcount {

Gf2System::Gf2System(std::size_t numColumns)
    : storage_(std::make_shared<const Storage>()), numColumns_(numColumns), numRows_(0) {}

Gf2System::Gf2System(std::size_t numColumns, std::vector<BitVector> rows, BitVector rhs)
    : numColumns_(numColumns), numRows_(rows.size()) {
  for (const BitVector& row : rows)
    if (row.size() != numColumns)
      throw std::invalid_argument("row length differs from column count");
  if (rhs.size() != rows.size())
    throw std::invalid_argument("rhs length differs from row count");
  storage_ = std::make_shared<const Storage>(Storage{std::move(rows), std::move(rhs)});
}

Gf2System Gf2System::prefix(std::size_t rows) const {
  if (rows > numRows_)
    throw std::out_of_range("prefix of " + std::to_string(rows) + " rows from a " + std::to_string(numRows_) +
                            "-row system");
  return Gf2System(storage_, numColumns_, rows);
}

bool Gf2System::satisfiedBy(const BitVector& x) const {
  for (std::size_t i = 0; i < numRows_; ++i)
    if (row(i).dot(x) != rhs(i))
      return false;
  return true;
}

std::string Gf2System::dump() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < numRows_; ++i) {
    for (std::size_t j = 0; j < numColumns_; ++j)
      out << (row(i).get(j) ? '1' : '0');
    out << " | " << (rhs(i) ? '1' : '0') << '\n';
  }
  return out.str();
}

Gf2System randomSystem(std::size_t numRows, std::size_t numColumns, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<BitVector> rows;
  rows.reserve(numRows);
  BitVector rhs(numRows);
  for (std::size_t i = 0; i < numRows; ++i) {
    BitVector row(numColumns);
    for (auto& word : row.words())
      word = rng();
    row.clearPadding();
    rows.push_back(std::move(row));
    rhs.set(i, rng.coin());
  }
  return Gf2System(numColumns, std::move(rows), std::move(rhs));
}

Gf2System randomSystem(std::size_t n, std::uint64_t seed) {
  if (n == 0)
    throw std::invalid_argument("random system needs at least one column");
  return randomSystem(n, n, seed);
}

EchelonForm eliminate(const Gf2System& system) {
  const std::size_t n = system.numColumns();
  const std::size_t m = system.numRows();
  std::vector<BitVector> rows;
  rows.reserve(m);
  BitVector rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows.push_back(system.row(i));
    rhs.set(i, system.rhs(i));
  }

  EchelonForm form;
  form.numColumns_ = n;
  std::size_t rank = 0;
  std::size_t col = 0;
  for (; col < n && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && !rows[pivot].get(col))
      ++pivot;
    if (pivot == m) {
      form.freeColumns_.push_back(col);
      continue;
    }
    if (pivot != rank) {
      std::swap(rows[pivot], rows[rank]);
      const bool tmp = rhs.get(pivot);
      rhs.set(pivot, rhs.get(rank));
      rhs.set(rank, tmp);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i != rank && rows[i].get(col)) {
        rows[i] ^= rows[rank];
        if (rhs.get(rank))
          rhs.flip(i);
      }
    }
    form.pivotColumns_.push_back(col);
    ++rank;
  }
  // Columns left once every row holds a pivot are free.
  for (; col < n; ++col)
    form.freeColumns_.push_back(col);

  // Rows below the rank are zero; any with rhs 1 is the equation 0 = 1.
  for (std::size_t i = rank; i < m; ++i)
    if (rhs.get(i))
      form.consistent_ = false;

  rows.resize(rank);
  form.rows_ = std::move(rows);
  form.rhs_ = BitVector(rank);
  for (std::size_t i = 0; i < rank; ++i)
    form.rhs_.set(i, rhs.get(i));

  // x_pivot(i) = rhs_i + sum over free f of row_i[f] x_f.
  for (std::size_t f : form.freeColumns_) {
    BitVector mask(n);
    mask.set(f, true);
    for (std::size_t i = 0; i < rank; ++i)
      if (form.rows_[i].get(f))
        mask.set(form.pivotColumns_[i], true);
    form.freeMasks_.push_back(std::move(mask));
  }
  return form;
}

std::optional<BitVector> EchelonForm::particularSolution() const {
  if (!consistent_)
    return std::nullopt;
  BitVector x(numColumns_);
  for (std::size_t i = 0; i < rank(); ++i)
    x.set(pivotColumns_[i], rhs_.get(i));
  return x;
}

SolutionEnumerator::SolutionEnumerator(const EchelonForm& form) : form_(&form) {
  if (!form.consistent())
    return;
  if (form.solutionCountLog2() > 62)
    throw std::invalid_argument("solution space of 2^" + std::to_string(form.solutionCountLog2()) +
                                " is too large to enumerate");
  current_ = *form.particularSolution();
  total_ = std::uint64_t{1} << form.solutionCountLog2();
}

const BitVector* SolutionEnumerator::next() {
  if (produced_ >= total_)
    return nullptr;
  if (produced_ > 0) {
    // Gray code: step i flips the free variable at the lowest set bit of i.
    const auto j = static_cast<std::size_t>(std::countr_zero(produced_));
    current_ ^= form_->freeColumnMasks()[j];
  }
  ++produced_;
  return &current_;
}

std::optional<BitVector> sampleSolution(const EchelonForm& form, std::uint64_t seed) {
  auto x = form.particularSolution();
  if (!x)
    return std::nullopt;
  SplitMix64 rng(seed);
  for (const BitVector& mask : form.freeColumnMasks())
    if (rng.coin())
      *x ^= mask;
  return x;
}

}  // namespace sharpcount
