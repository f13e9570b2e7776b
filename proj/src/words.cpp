#include "qmzv/words.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "qmzv/errors.hpp"

namespace qmzv {

std::string_view alphabet_name(Alphabet a) {
  switch (a) {
    case Alphabet::Y: return "Y";
    case Alphabet::Ybi: return "Ybi";
    case Alphabet::B: return "B";
    case Alphabet::X01: return "X01";
    case Alphabet::PY: return "PY";
  }
  return "?";
}

Letter Letter::y(int k) {
  if (k < 1) throw DomainError("y_k needs k >= 1");
  return {Alphabet::Y, k, 0};
}
Letter Letter::ybi(int k, int m) {
  if (k < 1 || m < 0) throw DomainError("y_{k,m} needs k >= 1, m >= 0");
  return {Alphabet::Ybi, k, m};
}
Letter Letter::b(int s) {
  if (s < 0) throw DomainError("b_s needs s >= 0");
  return {Alphabet::B, s, 0};
}
Letter Letter::x(int e) {
  if (e != 0 && e != 1) throw DomainError("x_e needs e in {0,1}");
  return {Alphabet::X01, e, 0};
}
Letter Letter::p() { return {Alphabet::PY, 0, 0}; }
Letter Letter::py_y() { return {Alphabet::PY, 1, 0}; }

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const auto& a : letters_) {
    if (a.alphabet != letters_.front().alphabet)
      throw AlphabetMismatch("word mixes alphabets " +
                             std::string(alphabet_name(letters_.front().alphabet)) + " and " +
                             std::string(alphabet_name(a.alphabet)));
  }
}

Word Word::b(std::initializer_list<int> s) { return b(std::vector<int>(s)); }

Word Word::b(const std::vector<int>& s) {
  std::vector<Letter> v;
  for (int i : s) v.push_back(Letter::b(i));
  return Word(std::move(v));
}

Word Word::y(const std::vector<int>& k) {
  std::vector<Letter> v;
  for (int i : k) v.push_back(Letter::y(i));
  return Word(std::move(v));
}

Word Word::ybi(const std::vector<std::pair<int, int>>& km) {
  std::vector<Letter> v;
  for (auto [k, m] : km) v.push_back(Letter::ybi(k, m));
  return Word(std::move(v));
}

Word Word::x(const std::vector<int>& e) {
  std::vector<Letter> v;
  for (int i : e) v.push_back(Letter::x(i));
  return Word(std::move(v));
}

Word Word::py(std::string_view s) {
  std::vector<Letter> v;
  for (char c : s) {
    if (c == 'p') v.push_back(Letter::p());
    else if (c == 'y') v.push_back(Letter::py_y());
    else throw DomainError("py word expects only 'p' and 'y'");
  }
  return Word(std::move(v));
}

std::optional<Alphabet> Word::alphabet() const {
  if (letters_.empty()) return std::nullopt;
  return letters_.front().alphabet;
}

Word Word::operator+(const Word& other) const {
  if (empty()) return other;
  if (other.empty()) return *this;
  if (*alphabet() != *other.alphabet()) throw AlphabetMismatch("concatenation across alphabets");
  Word out = *this;
  out.letters_.insert(out.letters_.end(), other.letters_.begin(), other.letters_.end());
  return out;
}

Word Word::prepend(const Letter& a) const {
  if (!empty() && a.alphabet != letters_.front().alphabet)
    throw AlphabetMismatch("prepend across alphabets");
  Word out;
  out.letters_.reserve(letters_.size() + 1);
  out.letters_.push_back(a);
  out.letters_.insert(out.letters_.end(), letters_.begin(), letters_.end());
  return out;
}

Word Word::slice(std::size_t from, std::size_t to) const {
  Word out;
  out.letters_.assign(letters_.begin() + static_cast<long>(from), letters_.begin() + static_cast<long>(to));
  return out;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
  return letters_ <=> other.letters_;
}

int weight(const Word& w) {
  int s = 0;
  for (const auto& a : w) {
    switch (a.alphabet) {
      case Alphabet::Y: s += a.i; break;
      case Alphabet::Ybi: s += a.i + a.j; break;
      case Alphabet::B: s += a.i == 0 ? 1 : a.i; break;
      case Alphabet::X01:
      case Alphabet::PY: s += 1; break;
    }
  }
  return s;
}

int depth(const Word& w) {
  int d = 0;
  for (const auto& a : w) {
    switch (a.alphabet) {
      case Alphabet::Y:
      case Alphabet::Ybi: ++d; break;
      case Alphabet::B: d += a.i != 0; break;
      case Alphabet::X01:
      case Alphabet::PY: d += a.i == 1; break;
    }
  }
  return d;
}

LinComb::LinComb(const Word& w, const Rational& c) { add(w, c); }

void LinComb::check_alphabet(const Word& w) {
  auto a = w.alphabet();
  if (!a) return;
  if (!alphabet_) {
    alphabet_ = a;
  } else if (*alphabet_ != *a) {
    throw AlphabetMismatch("linear combination mixes alphabets " +
                           std::string(alphabet_name(*alphabet_)) + " and " +
                           std::string(alphabet_name(*a)));
  }
}

void LinComb::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  check_alphabet(w);
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational LinComb::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

LinComb& LinComb::operator+=(const LinComb& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

LinComb& LinComb::operator-=(const LinComb& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

LinComb& LinComb::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

LinComb LinComb::operator+(const LinComb& o) const {
  LinComb r = *this;
  r += o;
  return r;
}

LinComb LinComb::operator-(const LinComb& o) const {
  LinComb r = *this;
  r -= o;
  return r;
}

LinComb LinComb::operator-() const { return *this * Rational(-1); }

LinComb LinComb::operator*(const Rational& c) const {
  LinComb r = *this;
  r *= c;
  return r;
}

LinComb LinComb::prepend(const Letter& a) const {
  LinComb r;
  for (const auto& [w, c] : terms_) r.add(w.prepend(a), c);
  return r;
}

LinComb concat(const LinComb& u, const LinComb& v) {
  if (u.alphabet() && v.alphabet() && *u.alphabet() != *v.alphabet())
    throw AlphabetMismatch("concat across alphabets");
  LinComb r;
  for (const auto& [a, ca] : u)
    for (const auto& [b, cb] : v) r.add(a + b, ca * cb);
  return r;
}

void Tensor::add(const Word& a, const Word& b, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Tensor::coefficient(const Word& a, const Word& b) const {
  auto it = terms_.find(Key{a, b});
  return it == terms_.end() ? Rational(0) : it->second;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

Tensor& Tensor::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, x] : terms_) x *= c;
  return *this;
}

Tensor Tensor::operator+(const Tensor& o) const {
  Tensor r = *this;
  r += o;
  return r;
}

Tensor Tensor::operator-(const Tensor& o) const {
  Tensor r = *this;
  r -= o;
  return r;
}

Tensor Tensor::operator*(const Rational& c) const {
  Tensor r = *this;
  r *= c;
  return r;
}

Tensor tensor(const LinComb& x, const LinComb& y) {
  Tensor t;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) t.add(a, b, ca * cb);
  return t;
}

Tensor delta_dec(const Word& w) {
  Tensor t;
  for (std::size_t i = 0; i <= w.size(); ++i) t.add(w.slice(0, i), w.slice(i, w.size()), 1);
  return t;
}

Tensor delta_dec(const LinComb& x) {
  Tensor t;
  for (const auto& [w, c] : x) t += delta_dec(w) * c;
  return t;
}

std::string to_string(const Letter& a) {
  switch (a.alphabet) {
    case Alphabet::Y: return "y" + std::to_string(a.i);
    case Alphabet::Ybi: return "y(" + std::to_string(a.i) + "|" + std::to_string(a.j) + ")";
    case Alphabet::B: return "b" + std::to_string(a.i);
    case Alphabet::X01: return "x" + std::to_string(a.i);
    case Alphabet::PY: return a.i == 0 ? "p" : "y";
  }
  return "?";
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += to_string(w[i]);
  }
  return s;
}

namespace {

// Longer words first, then canonical order within a length.
std::vector<std::pair<Word, Rational>> print_order(const LinComb::Map& m) {
  std::vector<std::pair<Word, Rational>> v(m.begin(), m.end());
  std::stable_sort(v.begin(), v.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  return v;
}

std::string term_string(const Rational& c, const std::string& body, bool first) {
  std::string s;
  if (first) {
    if (c < 0) s += "-";
  } else {
    s += c < 0 ? " - " : " + ";
  }
  Rational a = abs(c);
  if (body.empty()) return s + to_string(a);
  if (a != 1) s += to_string(a) + "*";
  return s + body;
}

}  // namespace

std::string to_string(const LinComb& x) {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : print_order(x.terms())) {
    s += term_string(c, w.empty() ? std::string() : to_string(w), first);
    first = false;
  }
  return s;
}

std::string to_string(const Tensor& t) {
  if (t.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, c] : t) {
    s += term_string(c, "[" + to_string(k.first) + " | " + to_string(k.second) + "]", first);
    first = false;
  }
  return s;
}

std::vector<std::pair<Word, Rational>> terms_in_print_order(const LinComb& x) { return print_order(x.terms()); }

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << to_string(w); }
std::ostream& operator<<(std::ostream& os, const LinComb& x) { return os << to_string(x); }
std::ostream& operator<<(std::ostream& os, const Tensor& t) { return os << to_string(t); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view t) : t_(t) {}

  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= t_.size();
  }
  char peek() const { return pos_ < t_.size() ? t_[pos_] : '\0'; }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  int integer() {
    std::size_t start = pos_;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (t_[pos_] - '0');
      if (v > 1000000) throw ParseError("index too large", start);
      ++pos_;
    }
    return static_cast<int>(neg ? -v : v);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool letter_start(char c) {
    return c == 'b' || c == 'y' || c == 'x' || c == 'p' || c == 'z';
  }

  void letters(std::vector<Letter>& out) {
    std::size_t start = pos_;
    char c = t_[pos_++];
    try {
      switch (c) {
        case 'b': out.push_back(Letter::b(integer())); return;
        case 'x': out.push_back(Letter::x(integer())); return;
        case 'p': out.push_back(Letter::p()); return;
        case 'y':
          if (peek() == '(') {
            ++pos_;
            skip();
            int k = integer();
            skip();
            expect('|');
            skip();
            int m = integer();
            skip();
            expect(')');
            out.push_back(Letter::ybi(k, m));
          } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
            out.push_back(Letter::y(integer()));
          } else {
            out.push_back(Letter::py_y());
          }
          return;
        case 'z': {
          skip();
          expect('(');
          skip();
          if (peek() == ')') {
            ++pos_;
            return;
          }
          while (true) {
            skip();
            out.push_back(Letter::b(integer()));
            skip();
            if (peek() == ',') {
              ++pos_;
              continue;
            }
            expect(')');
            return;
          }
        }
        default: break;
      }
    } catch (const DomainError& e) {
      throw ParseError(e.what(), start);
    }
    throw ParseError(std::string("unknown letter '") + c + "'", start);
  }

  Word word() {
    std::size_t start = pos_;
    std::vector<Letter> v;
    skip();
    if (peek() == '1' && (pos_ + 1 >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[pos_ + 1])))) {
      ++pos_;
      return Word{};
    }
    while (true) {
      skip();
      if (!letter_start(peek())) break;
      letters(v);
    }
    if (v.empty()) fail("expected a word");
    try {
      return Word(std::move(v));
    } catch (const AlphabetMismatch& e) {
      throw ParseError(e.what(), start);
    }
  }

  Rational rational() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '/') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    try {
      return parse_rational(t_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      throw ParseError("invalid rational", start);
    }
  }

 private:
  std::string_view t_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) {
  Parser p(text);
  Word w = p.word();
  if (!p.done()) p.fail("trailing input");
  return w;
}

LinComb parse_lincomb(std::string_view text) {
  Parser p(text);
  LinComb out;
  bool first = true;
  while (true) {
    p.skip();
    if (p.done()) {
      if (first) p.fail("empty expression");
      break;
    }
    Rational sign = 1;
    if (p.peek() == '+' || p.peek() == '-') {
      if (p.peek() == '-') sign = -1;
      p.expect(p.peek());
      p.skip();
    } else if (!first) {
      p.fail("expected '+' or '-'");
    }
    Rational c = 1;
    Word w;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(p.peek()))) {
      c = p.rational();
      have_coeff = true;
      p.skip();
      if (p.peek() == '*') {
        p.expect('*');
        w = p.word();
      } else if (Parser::letter_start(p.peek())) {
        w = p.word();
      }
    } else {
      w = p.word();
    }
    (void)have_coeff;
    try {
      out.add(w, sign * c);
    } catch (const AlphabetMismatch& e) {
      p.fail(e.what());
    }
    first = false;
  }
  return out;
}

std::vector<Word> b_words_of_weight(int wt) {
  std::vector<Word> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int rem) {
    if (rem == 0) {
      out.push_back(Word::b(cur));
      return;
    }
    for (int p = 1; p <= rem; ++p) {
      cur.push_back(p);
      rec(rem - p);
      cur.pop_back();
      if (p == 1) {
        cur.push_back(0);
        rec(rem - 1);
        cur.pop_back();
      }
    }
  };
  if (wt >= 0) rec(wt);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> b0_words_of_weight(int wt, int max_depth) {
  std::vector<Word> out;
  for (auto& w : b_words_of_weight(wt)) {
    if (!w.empty() && w[0].i == 0) continue;
    if (depth(w) > max_depth) continue;
    out.push_back(w);
  }
  return out;
}

std::vector<Word> ybi_words_of_weight(int wt, int max_depth) {
  std::vector<Word> out;
  std::vector<std::pair<int, int>> cur;
  std::function<void(int)> rec = [&](int rem) {
    if (rem == 0) {
      out.push_back(Word::ybi(cur));
      return;
    }
    if (static_cast<int>(cur.size()) >= max_depth) return;
    for (int p = 1; p <= rem; ++p)
      for (int k = 1; k <= p; ++k) {
        cur.emplace_back(k, p - k);
        rec(rem - p);
        cur.pop_back();
      }
  };
  if (wt >= 0) rec(wt);
  std::sort(out.begin(), out.end());
  return out;
}

IndexBlocks blocks(const Word& w) {
  IndexBlocks r;
  for (const auto& a : w) {
    if (a.alphabet != Alphabet::B) throw AlphabetMismatch("index blocks need a B word");
    if (a.i == 0) {
      if (r.k.empty()) throw DomainError("word starts with b0: " + to_string(w));
      ++r.m.back();
    } else {
      r.k.push_back(a.i);
      r.m.push_back(0);
    }
  }
  return r;
}

Word from_blocks(const std::vector<int>& k, const std::vector<int>& m) {
  std::vector<int> s;
  for (std::size_t i = 0; i < k.size(); ++i) {
    s.push_back(k[i]);
    for (int j = 0; j < m[i]; ++j) s.push_back(0);
  }
  return Word::b(s);
}

}  // namespace qmzv
