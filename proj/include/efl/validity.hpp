#pragma once

// Bounded validity: exhaustive enumeration of small EFL models.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "efl/engine.hpp"
#include "efl/model.hpp"
#include "efl/social.hpp"

namespace efl {

struct Signature {
  std::size_t max_worlds = 3;
  std::vector<AgentId> agents{"a", "b", "c"};
  std::vector<std::string> props{"p"};
  bool include_d = false;
};

/// How check_valid treats a model on which some dynamic operator of the
/// formula yields a structure that is not an EFL model.
enum class UndefinedHandling {
  error,       // propagate the exception
  vacuous,     // the dynamic modality holds vacuously there
  skip_model,  // leave the model out of the verdict
};

struct Verdict {
  bool valid = true;
  Signature signature;
  std::uint64_t models_checked = 0;
  /// Models on which some dynamic operator was undefined (vacuous or skipped).
  std::uint64_t models_undefined = 0;
  std::optional<Model> countermodel;
  std::optional<Point> point;
};

namespace detail {

/// All set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t maxv) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t v = 0; v <= maxv + 1; ++v) {
      if (i == 0 && v > 0) break;
      rgs[i] = v;
      rec(i + 1, std::max(maxv, v));
    }
  };
  if (n == 0) return {{}};
  rec(0, 0);
  return out;
}

inline std::uint64_t pow2(std::size_t e) {
  if (e >= 64) throw Error("enumeration space too large");
  return std::uint64_t{1} << e;
}

}  // namespace detail

inline std::uint64_t bell_number(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> t(n + 1);
  t[0] = {1};
  for (std::size_t i = 1; i <= n; ++i) {
    t[i].push_back(t[i - 1].back());
    for (std::size_t j = 0; j < i; ++j) t[i].push_back(t[i].back() + t[i - 1][j]);
  }
  return t[n][0];
}

/// Number of models enumerate() yields for exactly `worlds` worlds.
inline std::uint64_t model_count(const Signature& sig, std::size_t worlds) {
  const std::size_t na = sig.agents.size();
  std::uint64_t c = 1;
  for (std::size_t a = 0; a < na; ++a) c *= bell_number(worlds);
  c *= detail::pow2(na * (na - 1) / 2 * worlds);
  if (sig.include_d) c *= detail::pow2(na * na * worlds);
  c *= detail::pow2(worlds * na * sig.props.size());
  return c;
}

/// Calls fn on every EFL model with exactly `worlds` worlds over the
/// signature's agents (each named by itself) and propositions.  Order:
/// knowledge partitions, then friendship, then want, then valuation.
/// Stops early when fn returns false.
inline void enumerate(const Signature& sig, std::size_t worlds, const std::function<bool(const Model&)>& fn) {
  const std::size_t nw = worlds;
  const std::size_t na = sig.agents.size();
  if (na == 0) throw ModelError("signature has no agents");
  std::vector<WorldId> wn;
  for (std::size_t w = 0; w < nw; ++w) wn.push_back("w" + std::to_string(w));
  Model m(wn, sig.agents);
  for (std::size_t a = 0; a < na; ++a) m.set_name(sig.agents[a], a);
  const std::size_t np = m.num_points();

  const auto parts = detail::partitions(nw);
  std::vector<std::pair<std::size_t, std::size_t>> agent_pairs;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = a + 1; b < na; ++b) agent_pairs.emplace_back(a, b);
  const std::size_t f_bits = agent_pairs.size() * nw;
  const std::size_t d_bits = sig.include_d ? na * na * nw : 0;
  const std::size_t v_bits = np * sig.props.size();
  const std::uint64_t f_count = detail::pow2(f_bits);
  const std::uint64_t d_count = detail::pow2(d_bits);
  const std::uint64_t v_count = detail::pow2(v_bits);

  std::vector<std::size_t> kidx(na, 0);
  for (;;) {
    Relation k(np);
    for (std::size_t a = 0; a < na; ++a) {
      const auto& rgs = parts[kidx[a]];
      for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t v = 0; v < nw; ++v)
          if (rgs[w] == rgs[v]) k.insert(m.point(w, a), m.point(v, a));
    }
    m.set_knowledge(std::move(k));
    for (std::uint64_t fb = 0; fb < f_count; ++fb) {
      Relation f(np);
      for (std::size_t i = 0; i < f_bits; ++i) {
        if (!((fb >> i) & 1u)) continue;
        const std::size_t w = i / agent_pairs.size();
        const auto [a, b] = agent_pairs[i % agent_pairs.size()];
        f.insert(m.point(w, a), m.point(w, b));
        f.insert(m.point(w, b), m.point(w, a));
      }
      m.set_friendship(std::move(f));
      for (std::uint64_t db = 0; db < d_count; ++db) {
        if (sig.include_d) {
          Relation d(np);
          for (std::size_t i = 0; i < d_bits; ++i) {
            if (!((db >> i) & 1u)) continue;
            const std::size_t w = i / (na * na);
            const std::size_t a = (i / na) % na, b = i % na;
            d.insert(m.point(w, a), m.point(w, b));
          }
          m.set_want(std::move(d));
        }
        for (std::uint64_t vb = 0; vb < v_count; ++vb) {
          for (std::size_t p = 0; p < sig.props.size(); ++p) {
            PointSet s(np);
            for (std::size_t x = 0; x < np; ++x)
              if ((vb >> (p * np + x)) & 1u) s.set(x);
            m.set_valuation(sig.props[p], std::move(s));
          }
          if (!fn(m)) return;
        }
      }
    }
    std::size_t a = 0;
    while (a < na && ++kidx[a] == parts.size()) kidx[a++] = 0;
    if (a == na) break;
  }
}

/// Every model with 1..max_worlds worlds, smallest first.
inline void enumerate(const Signature& sig, const std::function<bool(const Model&)>& fn) {
  bool go = true;
  for (std::size_t n = 1; n <= sig.max_worlds && go; ++n)
    enumerate(sig, n, [&](const Model& m) { return go = fn(m); });
}

/// Is phi true at every point of every model of the signature?  Returns the
/// first countermodel in enumeration order otherwise.
inline Verdict check_valid(const Formula& phi, const Signature& sig,
                           UndefinedHandling handling = UndefinedHandling::error) {
  const Formula core = expand(phi);
  Evaluator ev(EvalOptions{handling == UndefinedHandling::vacuous ? UndefinedPolicy::vacuous : UndefinedPolicy::error});
  Verdict v;
  v.signature = sig;
  enumerate(sig, [&](const Model& m) {
    ++v.models_checked;
    const std::size_t before = ev.undefined_hits();
    PointSet s;
    try {
      s = ev.eval_core(m, core);
    } catch (const EFLViolation&) {
      if (handling != UndefinedHandling::skip_model) throw;
      ++v.models_undefined;
      return true;
    }
    if (ev.undefined_hits() != before) ++v.models_undefined;
    if (s.all()) return true;
    v.valid = false;
    v.countermodel = m;
    v.point = m.point_at((~s).members().front());
    return false;
  });
  return v;
}

inline Verdict check_equiv(const Formula& phi, const Formula& psi, const Signature& sig,
                           UndefinedHandling handling = UndefinedHandling::error) {
  return check_valid(iff(phi, psi), sig, handling);
}

}  // namespace efl
