#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sharpcount {

/// Fixed-length bit string packed into 64-bit words. Bits past size() in the
/// last word are kept zero so word-wise equality and popcount stay exact.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(wordsFor(size), 0) {}

  static constexpr std::size_t wordsFor(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
  }

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other) {
    for (std::size_t w = 0; w < words_.size(); ++w)
      words_[w] ^= other.words_[w];
    return *this;
  }

  std::size_t popcount() const {
    std::size_t total = 0;
    for (Word w : words_)
      total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  /// Parity of the AND of two equal-length vectors, i.e. their GF(2) dot product.
  bool dot(const BitVector& other) const {
    Word acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
      acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  /// Zeroes bits beyond size() after a raw word write.
  void clearPadding() {
    if (size_ % kWordBits != 0 && !words_.empty())
      words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const {
    std::size_t h = std::hash<std::size_t>{}(v.size());
    for (auto w : v.words())
      h ^= std::hash<BitVector::Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace sharpcount
