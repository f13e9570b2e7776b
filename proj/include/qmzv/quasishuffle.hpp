#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmzv/words.hpp"

namespace qmzv {

enum class ProductId { Shuffle, StuffleY, StuffleYbi, Balanced, ShufflePY };

std::string_view product_name(ProductId id);
/// "shuffle", "stuffle", "stuffle-bi", "balanced", "shuffle-py".
std::optional<ProductId> product_from_name(std::string_view name);

using Diamond = std::function<std::optional<Letter>(const Letter&, const Letter&)>;

/// Memoized quasi-shuffle product. Instances are shared process-wide via get().
class QuasiShuffle {
 public:
  static const QuasiShuffle& get(ProductId id);

  QuasiShuffle(ProductId id, std::optional<Alphabet> alphabet, Diamond diamond);

  ProductId id() const { return id_; }
  std::optional<Letter> diamond(const Letter& a, const Letter& b) const;

  LinComb operator()(const Word& u, const Word& v) const;
  LinComb operator()(const LinComb& u, const LinComb& v) const;

  /// Commutativity and associativity of the diamond on letters with indices <= window.
  bool diamond_is_valid(int window) const;

 private:
  LinComb mul(const Word& u, const Word& v) const;
  LinComb mul_py(const Word& u, const Word& v) const;
  void check(const Word& w) const;

  ProductId id_;
  std::optional<Alphabet> alphabet_;
  Diamond diamond_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<std::pair<Word, Word>, LinComb> memo_;
};

LinComb qshuffle(ProductId id, const LinComb& u, const LinComb& v);
LinComb qshuffle(ProductId id, const Word& u, const Word& v);
LinComb qshuffle_py(const LinComb& u, const LinComb& v);

/// n-fold power, with x^0 = 1.
LinComb qpower(ProductId id, const LinComb& x, int n);

struct BialgebraReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::string first_failure;
};

/// Checks Delta_dec(u * v) = Delta_dec(u) (* x *) Delta_dec(v) on all pairs from the sample.
BialgebraReport check_bialgebra(ProductId id, const std::vector<Word>& sample);

}  // namespace qmzv
