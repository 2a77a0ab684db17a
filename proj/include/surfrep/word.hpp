#pragma once

// Alphabets, freely reduced words and the word problem for surface group
// presentations.  Punctured surfaces are stored as free groups on the full
// symbol list; closed surfaces of genus >= 2 go through Dehn's algorithm,
// the closed torus through its abelianization.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surfrep/errors.hpp"

namespace surfrep {

// Symbols are indexed a1,b1,...,ag,bg,c1,...,cn -> 0..2g+n-1.
struct Alphabet {
  int genus = 0;
  int punctures = 0;

  int symbol_count() const { return 2 * genus + punctures; }

  int a_index(int i) const { return 2 * (i - 1); }      // i in 1..g
  int b_index(int i) const { return 2 * (i - 1) + 1; }  // i in 1..g
  int c_index(int j) const { return 2 * genus + (j - 1); }  // j in 1..n

  bool is_puncture_symbol(int s) const { return s >= 2 * genus; }

  std::string symbol_name(int s) const {
    if (s < 0 || s >= symbol_count()) throw input_error("symbol index out of range");
    if (s < 2 * genus) {
      const int handle = s / 2 + 1;
      return (s % 2 == 0 ? "a" : "b") + std::to_string(handle);
    }
    return "c" + std::to_string(s - 2 * genus + 1);
  }

  int symbol_index(std::string_view name) const {
    if (name.size() < 2) throw input_error("unknown symbol '" + std::string(name) + "'");
    const char kind = name[0];
    int num = 0;
    for (size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') throw input_error("unknown symbol '" + std::string(name) + "'");
      num = num * 10 + (name[i] - '0');
    }
    if (num < 1) throw input_error("unknown symbol '" + std::string(name) + "'");
    int idx = -1;
    if (kind == 'a' && num <= genus) idx = a_index(num);
    if (kind == 'b' && num <= genus) idx = b_index(num);
    if (kind == 'c' && num <= punctures) idx = c_index(num);
    if (idx < 0) {
      throw input_error("symbol '" + std::string(name) + "' not in the (g=" + std::to_string(genus) +
                        ", n=" + std::to_string(punctures) + ") alphabet");
    }
    return idx;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

struct Letter {
  int sym = 0;
  int sgn = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
  friend std::strong_ordering operator<=>(const Letter& x, const Letter& y) {
    const int ex = x.sym * 2 + (x.sgn < 0), ey = y.sym * 2 + (y.sgn < 0);
    return ex <=> ey;
  }
};

inline Letter inverse_of(Letter l) { return {l.sym, -l.sgn}; }

// A Word is freely reduced by construction.
class Word {
 public:
  Word() = default;

  static Word from_letters(std::vector<Letter> raw) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (const Letter& l : raw) push_reduce(out, l);
    return Word(std::move(out));
  }

  static Word parse(const Alphabet& ab, std::string_view text) {
    std::vector<Letter> raw;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
      int sgn = 1;
      if (tok.size() > 1 && tok.back() == '\'') {
        sgn = -1;
        tok.pop_back();
      }
      raw.push_back({ab.symbol_index(tok), sgn});
    }
    return from_letters(std::move(raw));
  }

  std::string str(const Alphabet& ab) const {
    std::string out;
    for (const Letter& l : ls_) {
      if (!out.empty()) out += ' ';
      out += ab.symbol_name(l.sym);
      if (l.sgn < 0) out += '\'';
    }
    return out;
  }

  const std::vector<Letter>& letters() const { return ls_; }
  int size() const { return static_cast<int>(ls_.size()); }
  bool empty() const { return ls_.empty(); }

  Word inverse() const {
    std::vector<Letter> out(ls_.rbegin(), ls_.rend());
    for (Letter& l : out) l.sgn = -l.sgn;
    return Word(std::move(out));  // reversal of a reduced word is reduced
  }

  friend Word operator*(const Word& x, const Word& y) {
    std::vector<Letter> out = x.ls_;
    for (const Letter& l : y.ls_) push_reduce(out, l);
    return Word(std::move(out));
  }

  Word conjugated_by(const Word& u) const { return u * (*this) * u.inverse(); }

  // w = conjugator * core * conjugator^{-1} with core cyclically reduced.
  std::pair<Word, Word> cyclic_reduce() const {
    size_t lo = 0, hi = ls_.size();
    while (hi - lo >= 2 && ls_[lo] == inverse_of(ls_[hi - 1])) {
      ++lo;
      --hi;
    }
    Word core(std::vector<Letter>(ls_.begin() + lo, ls_.begin() + hi));
    Word conj(std::vector<Letter>(ls_.begin(), ls_.begin() + lo));
    return {core, conj};
  }

  Word cyclic_rotation(int k) const {
    if (ls_.empty()) return {};
    const int n = size();
    k = ((k % n) + n) % n;
    std::vector<Letter> out;
    out.reserve(ls_.size());
    for (int i = 0; i < n; ++i) out.push_back(ls_[(i + k) % n]);
    return Word(std::move(out));  // rotations of a cyclically reduced word stay reduced
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& x, const Word& y) {
    return std::lexicographical_compare_three_way(x.ls_.begin(), x.ls_.end(), y.ls_.begin(), y.ls_.end());
  }

 private:
  explicit Word(std::vector<Letter> reduced) : ls_(std::move(reduced)) {}

  static void push_reduce(std::vector<Letter>& out, Letter l) {
    if (!out.empty() && out.back() == inverse_of(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }

  std::vector<Letter> ls_;
};

inline Word free_reduce(std::vector<Letter> raw) { return Word::from_letters(std::move(raw)); }

// True iff the cyclic cores are cyclic rotations of one another.
inline bool free_conjugate(const Word& u, const Word& v) {
  const Word cu = u.cyclic_reduce().first;
  const Word cv = v.cyclic_reduce().first;
  if (cu.size() != cv.size()) return false;
  if (cu.empty()) return true;
  for (int k = 0; k < cv.size(); ++k) {
    if (cu == cv.cyclic_rotation(k)) return true;
  }
  return false;
}

inline std::vector<long long> exponent_sums(const Alphabet& ab, const Word& w) {
  std::vector<long long> e(ab.symbol_count(), 0);
  for (const Letter& l : w.letters()) e[l.sym] += l.sgn;
  return e;
}

struct Presentation {
  Alphabet alphabet;

  bool closed() const { return alphabet.punctures == 0; }
  bool group_is_free() const { return alphabet.punctures >= 1; }

  // prod_i [a_i, b_i]; empty for free groups.
  Word relator() const {
    if (!closed()) return {};
    return commutator_product();
  }

  // prod_i [a_i, b_i] c_1 ... c_n: the derivable boundary word.
  Word boundary_word() const {
    std::vector<Letter> raw = commutator_product().letters();
    for (int j = 1; j <= alphabet.punctures; ++j) raw.push_back({alphabet.c_index(j), 1});
    return Word::from_letters(std::move(raw));
  }

  bool is_identity(const Word& w) const {
    if (group_is_free()) return w.empty();
    if (alphabet.genus == 0) {
      throw unsupported_error("word problem for the (g,n)=(0,0) presentation is not supported");
    }
    if (alphabet.genus == 1) {
      // pi_1 of the closed torus is Z^2; the abelianization is faithful.
      const auto e = exponent_sums(alphabet, w);
      return e[0] == 0 && e[1] == 0;
    }
    return dehn_trivial(w);
  }

  bool equal_in_group(const Word& u, const Word& v) const { return is_identity(u * v.inverse()); }

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  Word commutator_product() const {
    std::vector<Letter> raw;
    for (int i = 1; i <= alphabet.genus; ++i) {
      const int a = alphabet.a_index(i), b = alphabet.b_index(i);
      raw.push_back({a, 1});
      raw.push_back({b, 1});
      raw.push_back({a, -1});
      raw.push_back({b, -1});
    }
    return Word::from_letters(std::move(raw));
  }

  // Greedy Dehn reduction.  The genus-g relator has pieces of length 1, so
  // any nonempty reduced word representing 1 contains more than half of a
  // cyclic rotation of R or R^{-1} (Greendlinger).  Replacing that subword
  // by the inverse of the complement strictly shortens the word.  Positions
  // left of the last splice stay match-free, so the scan resumes just before
  // the edited region instead of from the start.
  bool dehn_trivial(const Word& w) const {
    const Word rel = relator();
    const int rlen = rel.size();   // 4g
    const int half = rlen / 2;     // matches must have length > half
    std::vector<Word> rots;
    rots.reserve(2 * rlen);
    for (int k = 0; k < rlen; ++k) rots.push_back(rel.cyclic_rotation(k));
    const Word inv = rel.inverse();
    for (int k = 0; k < rlen; ++k) rots.push_back(inv.cyclic_rotation(k));

    std::vector<Letter> cur = w.letters();
    int hint = 0;
    while (!cur.empty()) {
      const int n = static_cast<int>(cur.size());
      int best_pos = -1, best_len = 0, best_rot = -1;
      for (int pos = hint; pos < n && best_pos < 0; ++pos) {
        int here_len = 0, here_rot = -1;
        for (size_t r = 0; r < rots.size(); ++r) {
          const auto& rl = rots[r].letters();
          int len = 0;
          const int lim = std::min(n - pos, rlen);
          while (len < lim && cur[pos + len] == rl[len]) ++len;
          if (len > here_len) {
            here_len = len;
            here_rot = static_cast<int>(r);
          }
        }
        if (here_len > half) {  // leftmost position wins; longest match there
          best_pos = pos;
          best_len = here_len;
          best_rot = here_rot;
        }
      }
      if (best_pos < 0) {
        if (hint == 0) return false;
        hint = 0;  // one clean rescan before giving up
        continue;
      }
      // matched u with rot = u t: replace u by t^{-1}, which is shorter
      std::vector<Letter> next(cur.begin(), cur.begin() + best_pos);
      size_t low_water = next.size();
      const auto& rl = rots[best_rot].letters();
      auto push = [&](Letter l) {
        if (!next.empty() && next.back() == inverse_of(l)) {
          next.pop_back();
          low_water = std::min(low_water, next.size());
        } else {
          next.push_back(l);
        }
      };
      for (int i = rlen - 1; i >= best_len; --i) push(inverse_of(rl[i]));
      for (int i = best_pos + best_len; i < n; ++i) push(cur[i]);
      hint = std::max(0, static_cast<int>(low_water) - rlen);
      cur = std::move(next);
    }
    return true;
  }
};

}  // namespace surfrep
