#include "thompson/binary_word.hpp"

#include <algorithm>
#include <limits>

#include "thompson/error.hpp"

namespace thompson {

  BinaryWord BinaryWord::from_string(std::string_view bits) {
    BinaryWord w;
    for (char c : bits) {
      if (c != '0' && c != '1') {
        throw Error(ErrorKind::FormatError,
                    "invalid binary symbol '" + std::string(1, c) + "' in \"" + std::string(bits)
                        + "\"");
      }
      w.push_back(c == '1');
    }
    return w;
  }

  BinaryWord BinaryWord::repeat(bool symbol, std::uint64_t count) {
    BinaryWord w;
    w.push_back(symbol, count);
    return w;
  }

  bool BinaryWord::operator[](std::uint64_t i) const {
    if (i >= _size) {
      throw std::out_of_range("BinaryWord index out of range");
    }
    bool s = _first;
    for (run_type r : _runs) {
      if (i < r) {
        return s;
      }
      i -= r;
      s = !s;
    }
    return s;  // unreachable
  }

  bool BinaryWord::front() const {
    return (*this)[0];
  }

  bool BinaryWord::back() const {
    if (_size == 0) {
      throw std::out_of_range("back() of empty BinaryWord");
    }
    return (_runs.size() % 2 == 1) ? _first : !_first;
  }

  void BinaryWord::push_back(bool symbol, std::uint64_t count) {
    if (count == 0) {
      return;
    }
    if (_size == 0) {
      _first = symbol;
      _runs.clear();
    }
    if (_size != 0 && back() == symbol) {
      std::uint64_t total = std::uint64_t(_runs.back()) + count;
      if (total > std::numeric_limits<run_type>::max()) {
        throw Error(ErrorKind::ResourceLimit, "binary word run too long");
      }
      _runs.back() = static_cast<run_type>(total);
    } else {
      if (count > std::numeric_limits<run_type>::max()) {
        throw Error(ErrorKind::ResourceLimit, "binary word run too long");
      }
      _runs.push_back(static_cast<run_type>(count));
    }
    _size += count;
  }

  void BinaryWord::append(BinaryWord const& other) {
    bool s = other._first;
    for (run_type r : other._runs) {
      push_back(s, r);
      s = !s;
    }
  }

  void BinaryWord::pop_back(std::uint64_t count) {
    if (count > _size) {
      throw std::out_of_range("pop_back past the start of a BinaryWord");
    }
    _size -= count;
    while (count > 0) {
      if (_runs.back() <= count) {
        count -= _runs.back();
        _runs.pop_back();
      } else {
        _runs.back() -= static_cast<run_type>(count);
        count = 0;
      }
    }
  }

  BinaryWord BinaryWord::operator+(BinaryWord const& other) const {
    BinaryWord w(*this);
    w.append(other);
    return w;
  }

  BinaryWord BinaryWord::with(bool symbol) const {
    BinaryWord w(*this);
    w.push_back(symbol);
    return w;
  }

  bool BinaryWord::is_prefix_of(BinaryWord const& other) const noexcept {
    if (_size > other._size) {
      return false;
    }
    if (_size == 0) {
      return true;
    }
    if (_first != other._first) {
      return false;
    }
    std::size_t const n = _runs.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (_runs[i] != other._runs[i]) {
        return false;
      }
    }
    return _runs[n - 1] <= other._runs[n - 1];
  }

  BinaryWord BinaryWord::prefix(std::uint64_t n) const {
    if (n >= _size) {
      return *this;
    }
    BinaryWord w(*this);
    w.pop_back(_size - n);
    return w;
  }

  BinaryWord BinaryWord::drop(std::uint64_t n) const {
    BinaryWord w;
    bool s = _first;
    for (run_type r : _runs) {
      if (n >= r) {
        n -= r;
      } else {
        w.push_back(s, r - n);
        n = 0;
      }
      s = !s;
    }
    return w;
  }

  std::uint64_t BinaryWord::trailing(bool symbol) const noexcept {
    if (_size == 0 || back() != symbol) {
      return 0;
    }
    return _runs.back();
  }

  std::string BinaryWord::to_string() const {
    std::string out;
    out.reserve(_size);
    bool s = _first;
    for (run_type r : _runs) {
      out.append(r, s ? '1' : '0');
      s = !s;
    }
    return out;
  }

  std::size_t BinaryWord::hash() const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(_size) ^ (_first ? 0x9e3779b97f4a7c15ULL : 0);
    for (run_type r : _runs) {
      h ^= std::hash<run_type>{}(r) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  std::strong_ordering operator<=>(BinaryWord const& a, BinaryWord const& b) noexcept {
    std::size_t ia = 0, ib = 0;
    std::uint64_t ra = a._runs.empty() ? 0 : a._runs[0];
    std::uint64_t rb = b._runs.empty() ? 0 : b._runs[0];
    bool sa = a._first, sb = b._first;
    while (ia < a._runs.size() && ib < b._runs.size()) {
      if (sa != sb) {
        return sa ? std::strong_ordering::greater : std::strong_ordering::less;
      }
      std::uint64_t const m = std::min(ra, rb);
      ra -= m;
      rb -= m;
      if (ra == 0 && ++ia < a._runs.size()) {
        ra = a._runs[ia];
        sa = !sa;
      }
      if (rb == 0 && ++ib < b._runs.size()) {
        rb = b._runs[ib];
        sb = !sb;
      }
    }
    return a._size <=> b._size;
  }

}  // namespace thompson
