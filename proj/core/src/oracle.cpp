#include "gottcalc/oracle.hpp"

#include <optional>
#include <sstream>

#include "gottcalc/decompose.hpp"
#include "gottcalc/error.hpp"
#include "gottcalc/profiles.hpp"

namespace gottcalc {

ShiftPolynomial recursive_bouquet_coefficients(int m, int iterations) {
  if (m < 1 || iterations < 1) throw DomainError("bouquet width and iteration count must be at least 1");
  // coeff[j] is the multiplicity of G_{n+j}; one step is G_n(Z) + m G_{n+1}(Z).
  std::vector<BigInt> coeff{1};
  for (int step = 0; step < iterations; ++step) {
    std::vector<BigInt> next(coeff.size() + 1, BigInt(0));
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      next[j] += coeff[j];
      next[j + 1] += coeff[j] * m;
    }
    coeff = std::move(next);
  }
  std::map<Degree, BigInt> c;
  for (std::size_t j = 0; j < coeff.size(); ++j) c.emplace(static_cast<Degree>(j), coeff[j]);
  return ShiftPolynomial::from_coefficients(std::move(c));
}

ShiftPolynomial enumerate_tuple_shifts(const std::vector<std::vector<Degree>>& factor_shifts) {
  std::map<Degree, BigInt> c{{0, 1}};
  const std::size_t n = factor_shifts.size();
  if (n >= 63) throw DomainError("too many factors to enumerate");
  // Every nonempty subset of factors, then every choice of one shift per chosen factor.
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) chosen.push_back(i);
    }
    std::vector<std::size_t> pick(chosen.size(), 0);
    bool empty_factor = false;
    for (auto i : chosen) empty_factor |= factor_shifts[i].empty();
    if (empty_factor) continue;
    for (;;) {
      Degree total = 0;
      for (std::size_t r = 0; r < chosen.size(); ++r) total += factor_shifts[chosen[r]][pick[r]];
      c[total] += 1;
      std::size_t r = 0;
      while (r < chosen.size() && ++pick[r] == factor_shifts[chosen[r]].size()) pick[r++] = 0;
      if (r == chosen.size()) break;
    }
  }
  return ShiftPolynomial::from_coefficients(std::move(c));
}

// ---------------------------------------------------------------------------
// Randomized rule order

namespace {

FormalSum random_eval(const SpaceExpr& e, Degree n, std::mt19937_64& rng, const DeclaredShifts& declared) {
  if (e.is(SpaceKind::Point)) return {};
  if (!e.is(SpaceKind::Map)) {
    FormalSum s;
    s.add(Term::gottlieb(to_string(e), n));
    return s;
  }
  const SpaceExpr& x = e.source();
  const SpaceExpr& y = e.target();
  if (x.is(SpaceKind::Point)) return random_eval(y, n, rng, declared);

  const bool is_product = x.is(SpaceKind::Product);
  const auto split = sphere_splitting(x, declared);
  // Option 0: split the whole source; options 1..k: curry factor k-1 out first.
  std::size_t options = is_product ? x.children().size() + (split.splittable() ? 1 : 0) : 1;
  std::size_t choice = std::uniform_int_distribution<std::size_t>(0, options - 1)(rng);
  if (is_product && (choice > 0 || !split.splittable())) {
    std::size_t k = split.splittable() ? choice - 1 : choice;
    std::vector<SpaceExpr> others;
    for (std::size_t i = 0; i < x.children().size(); ++i) {
      if (i != k) others.push_back(x.children()[i]);
    }
    SpaceExpr inner = others.empty() ? y : SpaceExpr::map(SpaceExpr::product(std::move(others)), y);
    return random_eval(SpaceExpr::map(x.children()[k], inner), n, rng, declared);
  }

  FormalSum out = random_eval(y, n, rng, declared);
  if (split.splittable()) {
    for (const auto& [shift, count] : split.shifts()) out += random_eval(y, n + shift, rng, declared).scaled(count);
  } else if (x.is(SpaceKind::Susp)) {
    out.add(Term::generalized(x.inner(), n + x.count(), y));
  } else {
    out.add(Term::generalized(x, n, y));
  }
  return out;
}

std::string first_difference(const FormalSum& expected, const FormalSum& actual) {
  std::map<Term, std::pair<BigInt, BigInt>> diff;
  for (const auto& [t, m] : expected.terms()) diff[t].first = m;
  for (const auto& [t, m] : actual.terms()) diff[t].second = m;
  for (const auto& [t, mm] : diff) {
    if (mm.first != mm.second) {
      return to_string(t) + ": multiplicity " + mm.second.str() + " from strategy vs " + mm.first.str() +
             " from engine";
    }
  }
  return {};
}

struct BouquetForm {
  int m = 1;
  int iterations = 1;
  SpaceExpr target;
};

// Recognizes the iterated free bouquet shapes whose closed form is known.
std::optional<BouquetForm> bouquet_form(const SpaceExpr& e) {
  auto base_target = [](const SpaceExpr& t) { return !t.is(SpaceKind::Map) && !t.is_sugar(); };
  switch (e.kind()) {
    case SpaceKind::Loop:
      if (base_target(e.target())) return BouquetForm{1, e.count(), e.target()};
      break;
    case SpaceKind::BouquetSpace:
      if (base_target(e.target())) return BouquetForm{e.circles(), e.count(), e.target()};
      break;
    case SpaceKind::Map: {
      if (!base_target(e.target())) break;
      const auto& s = e.source();
      if (s.is(SpaceKind::Torus)) return BouquetForm{1, s.count(), e.target()};
      if (s.is(SpaceKind::Bouquet)) return BouquetForm{s.count(), 1, e.target()};
      if (s.is(SpaceKind::Sphere) && s.count() == 1) return BouquetForm{1, 1, e.target()};
      break;
    }
    default:
      break;
  }
  return std::nullopt;
}

// Sources of nested maps (products flattened) down to a non-map base.
void map_chain(const SpaceExpr& e, std::vector<SpaceExpr>& sources, std::optional<SpaceExpr>& base) {
  if (!e.is(SpaceKind::Map)) {
    base = e;
    return;
  }
  std::function<void(const SpaceExpr&)> flat = [&](const SpaceExpr& s) {
    if (s.is(SpaceKind::Product)) {
      for (const auto& c : s.children()) flat(c);
    } else {
      sources.push_back(s);
    }
  };
  flat(e.source());
  map_chain(e.target(), sources, base);
}

FormalSum from_polynomial(const ShiftPolynomial& p, const SpaceExpr& base, Degree n) {
  FormalSum s;
  if (base.is(SpaceKind::Point)) return s;
  for (const auto& [i, c] : p.coefficients()) s.add(Term::gottlieb(to_string(base), n + i), c);
  return s;
}

AbelianGroup random_group(std::mt19937_64& rng) {
  static const BigInt kOrders[] = {2, 3, 4, 5, 8, 9, 12};
  std::uniform_int_distribution<int> rank(0, 2);
  std::uniform_int_distribution<int> count(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kOrders) - 1);
  std::vector<BigInt> orders;
  for (int i = count(rng); i > 0; --i) orders.push_back(kOrders[pick(rng)]);
  return canonicalize(rank(rng), orders);
}

}  // namespace

FormalSum randomized_decompose(const SpaceExpr& e, Degree n, std::mt19937_64& rng, const DeclaredShifts& declared) {
  if (n < 1) throw DomainError("degree must be at least 1, got " + std::to_string(n));
  return random_eval(desugar(e), n, rng, declared);
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Deterministic:
      return "deterministic";
    case Strategy::RandomizedOrder:
      return "randomized-order";
    case Strategy::ClosedForm:
      return "closed-form";
    case Strategy::Polynomial:
      return "polynomial";
    case Strategy::Recursion:
      return "recursion";
    case Strategy::DerivedProfile:
      return "derived-profile";
  }
  return "?";
}

std::vector<Strategy> all_strategies() {
  return {Strategy::RandomizedOrder, Strategy::ClosedForm, Strategy::Polynomial, Strategy::Recursion,
          Strategy::DerivedProfile};
}

bool CheckReport::passed() const {
  for (const auto& e : entries) {
    if (e.applicable && !e.passed) return false;
  }
  return true;
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os << "crosscheck " << expression << '\n';
  for (const auto& e : entries) {
    os << "  deterministic vs " << to_string(e.candidate) << " [" << e.lo << ".." << e.hi << "]: ";
    if (!e.applicable) {
      os << "n/a";
    } else if (e.passed) {
      os << "PASS";
    } else {
      os << "FAIL " << e.counterexample;
    }
    os << '\n';
  }
  return os.str();
}

CheckReport crosscheck(const SpaceExpr& expr, Degree lo, Degree hi, std::span<const Strategy> strategies,
                       const CrosscheckOptions& options) {
  if (lo < 1 || hi < lo) throw DomainError("degree range must satisfy 1 <= lo <= hi");
  DecomposeEngine engine = options.engine ? options.engine : DecomposeEngine(
      [](const SpaceExpr& e, Degree n, const DeclaredShifts& d) { return decompose(e, n, d); });
  const auto& declared = options.declared;
  std::mt19937_64 rng(options.seed);

  CheckReport report;
  report.expression = to_string(expr);
  const SpaceExpr plain = desugar(expr);

  std::vector<FormalSum> reference;
  for (Degree n = lo; n <= hi; ++n) reference.push_back(engine(expr, n, declared));

  auto compare_all = [&](CheckEntry& entry, const std::function<FormalSum(Degree)>& produce) {
    for (Degree n = lo; n <= hi; ++n) {
      FormalSum got = produce(n);
      const FormalSum& want = reference[static_cast<std::size_t>(n - lo)];
      if (got != want) {
        entry.passed = false;
        entry.counterexample = "n=" + std::to_string(n) + ": " + first_difference(want, got);
        return;
      }
    }
  };

  for (Strategy s : strategies) {
    CheckEntry entry;
    entry.candidate = s;
    entry.lo = lo;
    entry.hi = hi;
    switch (s) {
      case Strategy::Deterministic:
        compare_all(entry, [&](Degree n) { return engine(expr, n, declared); });
        break;
      case Strategy::RandomizedOrder:
        compare_all(entry, [&](Degree n) { return randomized_decompose(plain, n, rng, declared); });
        break;
      case Strategy::ClosedForm:
      case Strategy::Recursion: {
        auto form = bouquet_form(expr);
        if (!form) {
          entry.applicable = false;
          break;
        }
        if (s == Strategy::ClosedForm) {
          compare_all(entry, [&](Degree n) { return closed_form_bouquet(form->m, form->iterations, n, form->target); });
        } else {
          const auto poly = recursive_bouquet_coefficients(form->m, form->iterations);
          compare_all(entry, [&](Degree n) { return from_polynomial(poly, form->target, n); });
        }
        break;
      }
      case Strategy::Polynomial: {
        std::vector<SpaceExpr> sources;
        std::optional<SpaceExpr> base;
        map_chain(plain, sources, base);
        ShiftPolynomial total;
        bool ok = true;
        for (const auto& src : sources) {
          if (!sphere_splitting(src, declared).splittable()) {
            ok = false;
            break;
          }
          total = total * shift_polynomial(src, declared);
        }
        if (!ok) {
          entry.applicable = false;
          break;
        }
        compare_all(entry, [&](Degree n) { return from_polynomial(total, *base, n); });
        break;
      }
      case Strategy::DerivedProfile: {
        std::vector<SpaceExpr> sources;
        std::optional<SpaceExpr> base;
        map_chain(plain, sources, base);
        bool ok = sources.size() >= 2 && base->is(SpaceKind::Atom);
        for (const auto& src : sources) ok = ok && sphere_splitting(src, declared).splittable();
        if (!ok) {
          entry.applicable = false;
          break;
        }
        // Synthetic table for the base, complete up to a bound past every degree reached.
        Degree reach = hi;
        for (const auto& src : sources) reach += shift_polynomial(src, declared).degree();
        ProfileDatabase db;
        for (const auto& [name, shifts] : declared) {
          SpaceProfile p;
          p.name = name;
          p.suspension_shifts = shifts;
          db.add_space(p);
        }
        SpaceProfile y;
        y.name = base->name();
        if (const auto* existing = db.find_space(y.name)) y = *existing;
        y.gottlieb = GradedGroup();
        for (Degree d = 1; d <= reach; ++d) y.gottlieb.set(d, random_group(rng));
        y.gottlieb.set_zero_above(reach);
        db.add_space(y);

        // Peel the innermost source into a derived profile.
        const std::string derived_name = "Derived_" + y.name;
        auto derived = gottlieb_table_of_map_space(sources.back(), y.name, 1, reach, db);
        SpaceProfile z;
        z.name = derived_name;
        z.gottlieb = derived.table;
        const ProfileDatabase db2 = db.with_space(z);
        std::vector<SpaceExpr> outer(sources.begin(), sources.end() - 1);
        const SpaceExpr peeled = SpaceExpr::map(
            outer.size() == 1 ? outer.front() : SpaceExpr::product(outer), SpaceExpr::atom(derived_name));

        for (Degree n = lo; n <= hi && entry.passed; ++n) {
          auto direct = evaluate(engine(expr, n, declared), db);
          auto via = evaluate(engine(peeled, n, declared), db2);
          if (!is_complete(direct) || !is_complete(via) || std::get<AbelianGroup>(direct) != std::get<AbelianGroup>(via)) {
            entry.passed = false;
            auto show = [](const Evaluation& v) {
              return is_complete(v) ? to_string(std::get<AbelianGroup>(v)) : std::string("incomplete");
            };
            entry.counterexample = "n=" + std::to_string(n) + ": direct " + show(direct) + " vs derived " + show(via);
          }
        }
        break;
      }
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Generators

SpaceExpr random_splittable_source(std::mt19937_64& rng, int depth, int max_shift) {
  auto roll = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  if (depth <= 1 || roll(0, 3) == 0) {
    switch (roll(0, 5)) {
      case 0:
        return SpaceExpr::bouquet(roll(1, 3));
      case 1:
        return SpaceExpr::torus(roll(1, 2));
      case 2:
        if (roll(0, 3) == 0) return SpaceExpr::point();
        [[fallthrough]];
      default:
        return SpaceExpr::sphere(roll(1, max_shift));
    }
  }
  switch (roll(0, 2)) {
    case 0: {
      std::vector<SpaceExpr> parts;
      for (int i = roll(1, 3); i > 0; --i) parts.push_back(random_splittable_source(rng, depth - 1, max_shift));
      return SpaceExpr::wedge(std::move(parts));
    }
    case 1: {
      std::vector<SpaceExpr> parts;
      for (int i = roll(2, 3); i > 0; --i) parts.push_back(random_splittable_source(rng, depth - 1, max_shift));
      return SpaceExpr::product(std::move(parts));
    }
    default:
      return SpaceExpr::susp(random_splittable_source(rng, depth - 1, max_shift), roll(1, 2));
  }
}

SpaceExpr random_query(std::mt19937_64& rng, int depth, int max_shift) {
  auto roll = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const SpaceExpr y = SpaceExpr::atom("Y");
  switch (roll(0, 4)) {
    case 0:
      return SpaceExpr::loop(y, roll(1, 4));
    case 1:
      return SpaceExpr::bouquet_space(y, roll(1, 3), roll(1, 3));
    case 2:
      return SpaceExpr::map(random_splittable_source(rng, depth - 1, max_shift),
                            SpaceExpr::map(random_splittable_source(rng, depth - 1, max_shift), y));
    default:
      return SpaceExpr::map(random_splittable_source(rng, depth, max_shift), y);
  }
}

SpaceExpr random_expression(std::mt19937_64& rng, int depth) {
  auto roll = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  static const char* const kNames[] = {"X", "Y", "B", "Z2", "A_1", "Sx", "T3a", "map1", "ptx", "Bq"};
  if (depth <= 1 || roll(0, 4) == 0) {
    switch (roll(0, 5)) {
      case 0:
        return SpaceExpr::atom(kNames[roll(0, static_cast<int>(std::size(kNames)) - 1)]);
      case 1:
        return SpaceExpr::sphere(roll(1, 12));
      case 2:
        return SpaceExpr::point();
      case 3:
        return SpaceExpr::torus(roll(1, 5));
      case 4:
        return SpaceExpr::bouquet(roll(1, 5));
      default:
        return SpaceExpr::atom("Y");
    }
  }
  auto sub = [&] { return random_expression(rng, depth - 1); };
  auto list = [&] {
    std::vector<SpaceExpr> xs;
    for (int i = roll(1, 3); i > 0; --i) xs.push_back(sub());
    return xs;
  };
  switch (roll(0, 6)) {
    case 0:
      return SpaceExpr::wedge(list());
    case 1:
      return SpaceExpr::product(list());
    case 2:
      return SpaceExpr::susp(sub(), roll(1, 3));
    case 3:
      return SpaceExpr::map(sub(), sub());
    case 4:
      return SpaceExpr::loop(sub(), roll(1, 3));
    case 5:
      return SpaceExpr::bouquet_space(sub(), roll(1, 3), roll(1, 3));
    default:
      return SpaceExpr::map(sub(), SpaceExpr::atom("Y"));
  }
}

}  // namespace gottcalc
