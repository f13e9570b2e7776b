#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmzv/rational.hpp"

namespace qmzv {

enum class Alphabet : std::uint8_t { Y, Ybi, B, X01, PY };

std::string_view alphabet_name(Alphabet a);

// For PY letters i is 0 for p and 1 for y. j is only used by Ybi.
struct Letter {
  Alphabet alphabet = Alphabet::B;
  int i = 0;
  int j = 0;

  static Letter y(int k);
  static Letter ybi(int k, int m);
  static Letter b(int s);
  static Letter x(int e);
  static Letter p();
  static Letter py_y();

  auto operator<=>(const Letter&) const = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word b(std::initializer_list<int> s);
  static Word b(const std::vector<int>& s);
  static Word y(const std::vector<int>& k);
  static Word ybi(const std::vector<std::pair<int, int>>& km);
  static Word x(const std::vector<int>& e);
  /// From a string of 'p' and 'y' characters.
  static Word py(std::string_view s);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t n) const { return letters_[n]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  const std::vector<Letter>& letters() const { return letters_; }

  /// Alphabet of the letters, nullopt for the empty word.
  std::optional<Alphabet> alphabet() const;

  Word operator+(const Word& other) const;
  Word prepend(const Letter& a) const;
  Word slice(std::size_t from, std::size_t to) const;

  // Canonical order: shorter words first, then lexicographic on letters.
  std::strong_ordering operator<=>(const Word& other) const;
  bool operator==(const Word& other) const = default;

 private:
  std::vector<Letter> letters_;
};

int weight(const Word& w);
int depth(const Word& w);

class LinComb {
 public:
  using Map = std::map<Word, Rational>;

  LinComb() = default;
  LinComb(const Word& w, const Rational& c = 1);

  static LinComb one() { return LinComb(Word{}); }

  void add(const Word& w, const Rational& c);
  Rational coefficient(const Word& w) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }
  std::optional<Alphabet> alphabet() const { return alphabet_; }

  LinComb& operator+=(const LinComb& o);
  LinComb& operator-=(const LinComb& o);
  LinComb& operator*=(const Rational& c);
  LinComb operator+(const LinComb& o) const;
  LinComb operator-(const LinComb& o) const;
  LinComb operator-() const;
  LinComb operator*(const Rational& c) const;
  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

  /// Prepend a letter to every word.
  LinComb prepend(const Letter& a) const;

 private:
  void check_alphabet(const Word& w);

  Map terms_;
  std::optional<Alphabet> alphabet_;
};

inline LinComb operator*(const Rational& c, const LinComb& x) { return x * c; }

LinComb concat(const LinComb& u, const LinComb& v);

// Element of the tensor square, stored on pairs of words.
class Tensor {
 public:
  using Key = std::pair<Word, Word>;
  using Map = std::map<Key, Rational>;

  Tensor() = default;
  void add(const Word& a, const Word& b, const Rational& c);
  Rational coefficient(const Word& a, const Word& b) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(const Rational& c);
  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor operator*(const Rational& c) const;
  bool operator==(const Tensor& o) const { return terms_ == o.terms_; }

 private:
  Map terms_;
};

/// x (x) y for linear combinations.
Tensor tensor(const LinComb& x, const LinComb& y);

Tensor delta_dec(const Word& w);
Tensor delta_dec(const LinComb& x);

/// Apply linear maps given on words to both tensor legs.
template <class F, class G>
Tensor map_tensor(const Tensor& t, F&& left, G&& right) {
  Tensor out;
  for (const auto& [key, c] : t) {
    LinComb l = left(key.first);
    if (l.is_zero()) continue;
    LinComb r = right(key.second);
    for (const auto& [a, ca] : l)
      for (const auto& [b, cb] : r) out.add(a, b, c * ca * cb);
  }
  return out;
}

/// Extend a map on words linearly.
template <class F>
LinComb linear(const LinComb& x, F&& f) {
  LinComb out;
  for (const auto& [w, c] : x) {
    LinComb fw = f(w);
    fw *= c;
    out += fw;
  }
  return out;
}

std::string to_string(const Letter& a);
std::string to_string(const Word& w);
std::string to_string(const LinComb& x);
std::string to_string(const Tensor& t);

std::ostream& operator<<(std::ostream& os, const Word& w);
std::ostream& operator<<(std::ostream& os, const LinComb& x);
std::ostream& operator<<(std::ostream& os, const Tensor& t);

/// Terms in printing order: longer words first, canonical order within a length.
std::vector<std::pair<Word, Rational>> terms_in_print_order(const LinComb& x);

Word parse_word(std::string_view text);
LinComb parse_lincomb(std::string_view text);

/// All words of the B alphabet with the given weight (any depth), canonical order.
std::vector<Word> b_words_of_weight(int wt);
/// B words of weight wt not starting with b0.
std::vector<Word> b0_words_of_weight(int wt, int max_depth = 1 << 20);
/// Ybi words of weight wt.
std::vector<Word> ybi_words_of_weight(int wt, int max_depth = 1 << 20);

/// Decompose b_{k1} b0^{m1} ... b_{kd} b0^{md}; requires a first letter != b0.
struct IndexBlocks {
  std::vector<int> k;
  std::vector<int> m;
};
IndexBlocks blocks(const Word& w);
Word from_blocks(const std::vector<int>& k, const std::vector<int>& m);

}  // namespace qmzv
