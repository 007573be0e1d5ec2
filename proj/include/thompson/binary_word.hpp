#ifndef THOMPSON_BINARY_WORD_HPP_
#define THOMPSON_BINARY_WORD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <boost/container/small_vector.hpp>

namespace thompson {

  // A finite word over {0, 1}, naming a branch of a binary tree and the
  // dyadic interval below it.
  //
  // Words are stored run-length encoded: branches such as 0^k 1 with k in the
  // hundreds of thousands show up when long words in x0 are evaluated, and a
  // bit-per-symbol encoding would make those elements quadratic in size.
  class BinaryWord {
   public:
    using run_type = std::uint32_t;

    BinaryWord() = default;

    // Throws Error(FormatError) on a symbol other than '0' or '1'.
    static BinaryWord from_string(std::string_view bits);
    static BinaryWord repeat(bool symbol, std::uint64_t count);

    [[nodiscard]] std::uint64_t size() const noexcept {
      return _size;
    }
    [[nodiscard]] bool empty() const noexcept {
      return _size == 0;
    }

    // O(number of runs).
    [[nodiscard]] bool operator[](std::uint64_t i) const;
    [[nodiscard]] bool front() const;
    [[nodiscard]] bool back() const;

    void push_back(bool symbol, std::uint64_t count = 1);
    void append(BinaryWord const& other);
    void pop_back(std::uint64_t count = 1);

    [[nodiscard]] BinaryWord operator+(BinaryWord const& other) const;
    [[nodiscard]] BinaryWord with(bool symbol) const;

    // u.is_prefix_of(w) iff w = u s for some (possibly empty) s.
    [[nodiscard]] bool is_prefix_of(BinaryWord const& other) const noexcept;
    [[nodiscard]] bool is_strict_prefix_of(BinaryWord const& other) const noexcept {
      return _size < other._size && is_prefix_of(other);
    }

    [[nodiscard]] BinaryWord prefix(std::uint64_t n) const;
    // Drops the first n symbols.
    [[nodiscard]] BinaryWord drop(std::uint64_t n) const;

    // Length of the maximal block of `symbol` at the end of the word.
    [[nodiscard]] std::uint64_t trailing(bool symbol) const noexcept;
    [[nodiscard]] bool is_constant(bool symbol) const noexcept {
      return trailing(symbol) == _size;
    }

    [[nodiscard]] std::size_t number_of_runs() const noexcept {
      return _runs.size();
    }
    [[nodiscard]] std::span<run_type const> runs() const noexcept {
      return {_runs.data(), _runs.size()};
    }
    // Symbol of the first run; meaningless for the empty word.
    [[nodiscard]] bool first_symbol() const noexcept {
      return _first;
    }

    // Symbols as '0'/'1' characters; the empty word gives "".
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] std::size_t hash() const noexcept;

    friend bool operator==(BinaryWord const& a, BinaryWord const& b) noexcept {
      return a._size == b._size && (a._size == 0 || (a._first == b._first && a._runs == b._runs));
    }
    // Lexicographic order. Restricted to a prefix code it is the left to
    // right order of the leaves.
    friend std::strong_ordering operator<=>(BinaryWord const& a, BinaryWord const& b) noexcept;

   private:
    boost::container::small_vector<run_type, 3> _runs;
    std::uint64_t _size = 0;
    bool _first = false;
  };

  struct BinaryWordHash {
    std::size_t operator()(BinaryWord const& w) const noexcept {
      return w.hash();
    }
  };

}  // namespace thompson

#endif  // THOMPSON_BINARY_WORD_HPP_
