#include "frcert/fourier_motzkin.hpp"

#include <map>
#include <string>

namespace frcert {

void LinearSystem::add(RatVector coeffs, Relation rel, Rat rhs) {
  if (coeffs.size() != num_vars)
    throw DimensionError("constraint has " + std::to_string(coeffs.size()) + " coefficients, system has " + std::to_string(num_vars) + " variables");
  rows.push_back({std::move(coeffs), rel, std::move(rhs)});
}

void LinearSystem::add_bound(Index j, Relation rel, Rat rhs) {
  RatVector e = RatVector::Constant(num_vars, Rat(0));
  e(j) = 1;
  add(std::move(e), rel, std::move(rhs));
}

namespace {

struct Row {
  RatVector a;
  Relation rel;
  Rat b;
  RatVector lam;
};

struct Substitution {
  Index var;
  Row row;
};

struct Stage {
  Index var;
  std::vector<Row> bounds;  // rows with a nonzero coefficient on var
};

Row scaled(const Row& r, const Rat& f) { return {r.a * f, r.rel, r.b * f, r.lam * f}; }

void axpy(Row& g, const Rat& f, const Row& e) {
  g.a -= f * e.a;
  g.b -= f * e.b;
  g.lam -= f * e.lam;
}

void normalize(Row& r) {
  for (Index i = 0; i < r.a.size(); ++i)
    if (r.a(i) != 0) {
      Rat f = 1 / abs(r.a(i));
      r = scaled(r, f);
      return;
    }
}

std::string key_of(const RatVector& a) {
  std::string k;
  for (Index i = 0; i < a.size(); ++i) {
    k += a(i).str();
    k += ',';
  }
  return k;
}

// Returns true if the all-zero row is contradictory.
bool contradiction(const Row& r) {
  if (r.rel == Relation::Eq) return r.b != 0;
  if (r.rel == Relation::Ge) return r.b > 0;
  return r.b >= 0;
}

RatVector certificate_from(const Row& r) {
  if (r.rel == Relation::Eq && r.b < 0) return -r.lam;
  return r.lam;
}

// Keeps one row per coefficient vector: the tightest one.
std::vector<Row> prune(std::vector<Row>&& rows) {
  std::map<std::string, Row> best;
  std::vector<std::string> order;
  for (auto& r : rows) {
    normalize(r);
    std::string k = key_of(r.a);
    auto it = best.find(k);
    if (it == best.end()) {
      order.push_back(k);
      best.emplace(k, std::move(r));
      continue;
    }
    Row& cur = it->second;
    if (r.b > cur.b || (r.b == cur.b && r.rel == Relation::Gt && cur.rel != Relation::Gt)) cur = std::move(r);
  }
  std::vector<Row> out;
  out.reserve(order.size());
  for (const auto& k : order) out.push_back(std::move(best.at(k)));
  return out;
}

bool is_zero(const RatVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

}  // namespace

bool satisfies(const LinearSystem& sys, const RatVector& x) {
  if (x.size() != sys.num_vars) return false;
  for (const auto& r : sys.rows) {
    Rat v = r.coeffs.dot(x);
    switch (r.relation) {
      case Relation::Eq: if (v != r.rhs) return false; break;
      case Relation::Ge: if (v < r.rhs) return false; break;
      case Relation::Gt: if (v <= r.rhs) return false; break;
    }
  }
  return true;
}

bool check_farkas(const LinearSystem& sys, const RatVector& lambda) {
  if (lambda.size() != static_cast<Index>(sys.rows.size())) return false;
  RatVector combo = RatVector::Constant(sys.num_vars, Rat(0));
  Rat rhs(0);
  bool strict_weight = false;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const Rat& l = lambda(static_cast<Index>(i));
    const auto& r = sys.rows[i];
    if (r.relation != Relation::Eq && l < 0) return false;
    if (r.relation == Relation::Gt && l > 0) strict_weight = true;
    combo += l * r.coeffs;
    rhs += l * r.rhs;
  }
  if (!is_zero(combo)) return false;
  return rhs > 0 || (rhs == 0 && strict_weight);
}

FeasibilityResult solve_system(const LinearSystem& sys, std::size_t max_rows) {
  const Index n = sys.num_vars;
  const Index rcount = static_cast<Index>(sys.rows.size());
  std::vector<Row> eqs, ineqs;
  for (Index i = 0; i < rcount; ++i) {
    const auto& src = sys.rows[static_cast<std::size_t>(i)];
    Row r{src.coeffs, src.relation, src.rhs, RatVector::Constant(rcount, Rat(0))};
    r.lam(i) = 1;
    (r.rel == Relation::Eq ? eqs : ineqs).push_back(std::move(r));
  }

  FeasibilityResult result;
  auto fail = [&](const Row& r) {
    result.feasible = false;
    result.farkas = certificate_from(r);
    return result;
  };

  // Equalities: Gaussian substitution.
  std::vector<Substitution> subs;
  while (!eqs.empty()) {
    Row e = std::move(eqs.back());
    eqs.pop_back();
    Index j = -1;
    for (Index c = 0; c < n; ++c)
      if (e.a(c) != 0) { j = c; break; }
    if (j < 0) {
      if (contradiction(e)) return fail(e);
      continue;
    }
    for (auto& g : eqs)
      if (g.a(j) != 0) axpy(g, g.a(j) / e.a(j), e);
    for (auto& g : ineqs)
      if (g.a(j) != 0) axpy(g, g.a(j) / e.a(j), e);
    subs.push_back({j, std::move(e)});
  }

  // Inequalities: Fourier-Motzkin.
  std::vector<Row> rows;
  for (auto& r : ineqs) {
    if (is_zero(r.a)) {
      if (contradiction(r)) return fail(r);
      continue;
    }
    rows.push_back(std::move(r));
  }
  rows = prune(std::move(rows));

  std::vector<bool> active(static_cast<std::size_t>(n), false);
  for (const auto& r : rows)
    for (Index c = 0; c < n; ++c)
      if (r.a(c) != 0) active[static_cast<std::size_t>(c)] = true;

  std::vector<Stage> stages;
  while (true) {
    Index best = -1;
    std::size_t best_cost = 0;
    for (Index c = 0; c < n; ++c) {
      if (!active[static_cast<std::size_t>(c)]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : rows) {
        if (r.a(c) > 0) ++pos;
        else if (r.a(c) < 0) ++neg;
      }
      std::size_t cost = pos * neg;
      if (best < 0 || cost < best_cost) { best = c; best_cost = cost; }
    }
    if (best < 0) break;
    active[static_cast<std::size_t>(best)] = false;

    Stage st{best, {}};
    std::vector<Row> pos, neg, next;
    for (auto& r : rows) {
      if (r.a(best) > 0) pos.push_back(r);
      else if (r.a(best) < 0) neg.push_back(r);
      else next.push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Rat fp = -q.a(best), fq = p.a(best);
        Row r{fp * p.a + fq * q.a,
              (p.rel == Relation::Gt || q.rel == Relation::Gt) ? Relation::Gt : Relation::Ge,
              fp * p.b + fq * q.b, fp * p.lam + fq * q.lam};
        r.a(best) = 0;
        if (is_zero(r.a)) {
          if (contradiction(r)) return fail(r);
          continue;
        }
        next.push_back(std::move(r));
      }
    }
    st.bounds = std::move(pos);
    st.bounds.insert(st.bounds.end(), std::make_move_iterator(neg.begin()), std::make_move_iterator(neg.end()));
    stages.push_back(std::move(st));
    rows = prune(std::move(next));
    if (rows.size() > max_rows)
      throw SizeGuardError("Fourier-Motzkin system grew to " + std::to_string(rows.size()) + " rows");
  }

  // Back-substitution.
  RatVector x = RatVector::Constant(n, Rat(0));
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    const Index j = it->var;
    std::optional<Rat> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : it->bounds) {
      Rat rest = r.a.dot(x) - r.a(j) * x(j);
      Rat bound = (r.b - rest) / r.a(j);
      bool strict = r.rel == Relation::Gt;
      if (r.a(j) > 0) {
        if (!lo || bound > *lo) { lo = bound; lo_strict = strict; }
        else if (bound == *lo) lo_strict = lo_strict || strict;
      } else {
        if (!hi || bound < *hi) { hi = bound; hi_strict = strict; }
        else if (bound == *hi) hi_strict = hi_strict || strict;
      }
    }
    if (lo && hi) x(j) = (*lo == *hi) ? *lo : (*lo + *hi) / 2;
    else if (lo) x(j) = *lo + (lo_strict ? 1 : 0);
    else if (hi) x(j) = *hi - (hi_strict ? 1 : 0);
  }
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
    const Index j = it->var;
    const Row& r = it->row;
    Rat rest = r.a.dot(x) - r.a(j) * x(j);
    x(j) = (r.b - rest) / r.a(j);
  }
  result.feasible = true;
  result.point = std::move(x);
  return result;
}

}  // namespace frcert
