#include "currents_lab/dynamics.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "currents_lab/errors.hpp"
#include "currents_lab/parallel.hpp"
#include "currents_lab/random.hpp"

namespace currents_lab {

bool ConvergenceReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

void ConvergenceReport::check(std::string name, bool passed, Fields witness) {
  assertions.push_back(Assertion{std::move(name), passed, std::move(witness)});
}

namespace {

std::string str(const Rational& r) { return to_string(r); }
std::string str(int n) { return std::to_string(n); }
std::string str(std::size_t n) { return std::to_string(n); }
std::string str(bool b) { return b ? "true" : "false"; }

void require_rank(int rank, int minimum, const std::string& id) {
  if (rank < minimum) {
    throw Error(ErrorCode::kRankTooSmall, id + " requires rank ≥ " + std::to_string(minimum) +
                                              " (got " + std::to_string(rank) + ")");
  }
}

void require_positive(int value, const std::string& what) {
  if (value < 1) throw Error(ErrorCode::kInvalidArgument, what + " must be >= 1");
}

Word word(Basis basis, std::string_view literal) { return Word::parse(basis, literal); }

Letter letter(char symbol) { return Letter::from_symbol(symbol); }

std::string twist_name(Letter x, Letter y) {
  return std::string(1, x.symbol()) + "->" + x.symbol() + y.symbol();
}

std::size_t count_letter(const Word& w, Letter x) {
  return static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [&](Letter y) { return y.positive() == x.positive(); }));
}

// Minimal h with u = h u' h^-1 and u' cyclically reduced.
std::size_t conjugator_length(const Word& u) {
  std::size_t k = 0;
  while (2 * k + 1 < u.size() && u[k] == u[u.size() - 1 - k].inverse()) ++k;
  return k;
}

// Index of the first n in [from, to) with seq[n+1] > seq[n], if any.
std::optional<std::size_t> first_increase(const std::vector<Rational>& seq, std::size_t from) {
  for (std::size_t n = from; n + 1 < seq.size(); ++n) {
    if (seq[n + 1] > seq[n]) return n;
  }
  return std::nullopt;
}

ReportTable tree_limit_table(const std::string& name, const std::vector<std::string>& labels,
                             const std::vector<const ProjectiveTreeVector*>& vectors) {
  ReportTable table{name, {"class"}, {}};
  for (const auto& l : labels) table.columns.push_back(l);
  const auto& first = *vectors.front();
  for (std::size_t i = 0; i < first.entries().size(); ++i) {
    std::vector<std::string> row{first.entries()[i].first.to_string()};
    for (const auto* v : vectors) row.push_back(str(v->entries()[i].second));
    table.rows.push_back(std::move(row));
  }
  return table;
}

// First class where two tree vectors differ.
Fields tree_vector_witness(const ProjectiveTreeVector& p, const ProjectiveTreeVector& q,
                           const std::string& p_name, const std::string& q_name) {
  Fields witness{{"classes", str(p.entries().size())}};
  for (std::size_t i = 0; i < std::min(p.entries().size(), q.entries().size()); ++i) {
    if (p.entries()[i] != q.entries()[i]) {
      witness.emplace_back("first_difference", p.entries()[i].first.to_string());
      witness.emplace_back(p_name, str(p.entries()[i].second));
      witness.emplace_back(q_name, str(q.entries()[i].second));
      return witness;
    }
  }
  witness.emplace_back("first_difference", "none");
  return witness;
}

}  // namespace

CurrentOrbit current_orbit(const FreeAutomorphism& phi, const RationalCurrent& nu0, int iterations,
                           int level, const RationalCurrent& target) {
  if (iterations < 0) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 0");
  const ProjectiveCurrentVector goal = projective_vector(target, level);
  CurrentOrbit orbit;
  RationalCurrent nu = nu0;
  for (int n = 0; n <= iterations; ++n) {
    orbit.lengths.push_back(length(nu));
    orbit.vectors.push_back(projective_vector(nu, level));
    orbit.distances.push_back(projective_distance(orbit.vectors.back(), goal));
    if (n < iterations) nu = act(phi, nu);
  }
  return orbit;
}

ReportTable orbit_table(const std::string& name, const CurrentOrbit& orbit) {
  ReportTable table{name, {"n", "length", "distance"}, {}};
  for (std::size_t n = 0; n < orbit.lengths.size(); ++n) {
    table.rows.push_back({str(n), str(orbit.lengths[n]), str(orbit.distances[n])});
  }
  return table;
}

ReportTable orbit_vector_table(const std::string& name, const CurrentOrbit& orbit) {
  ReportTable table{name, {"n", "word", "value"}, {}};
  for (std::size_t n = 0; n < orbit.vectors.size(); ++n) {
    for (const auto& [v, value] : orbit.vectors[n].entries()) {
      table.rows.push_back({str(n), v.to_string(), str(value)});
    }
  }
  return table;
}

ConvergenceReport iterate_current(const FreeAutomorphism& phi, const RationalCurrent& nu0,
                                  int iterations, int level, const RationalCurrent& target,
                                  bool twist_growth) {
  ConvergenceReport report;
  report.experiment = "iterate";
  report.claim = "lim [phi^n nu] = [target]";
  report.params = {{"automorphism", phi.to_string()},
                   {"seed_current", nu0.to_string()},
                   {"target", target.to_string()},
                   {"iterations", str(iterations)},
                   {"level", str(level)}};
  const CurrentOrbit orbit = current_orbit(phi, nu0, iterations, level, target);
  report.tables.push_back(orbit_table("orbit", orbit));
  report.tables.push_back(orbit_vector_table("vectors", orbit));
  if (twist_growth && iterations >= 1 && orbit.lengths[1] > orbit.lengths[0]) {
    const Rational step = orbit.lengths[1] - orbit.lengths[0];
    std::optional<std::size_t> bad;
    for (std::size_t n = 0; n < orbit.lengths.size() && !bad; ++n) {
      if (orbit.lengths[n] < orbit.lengths[0] + static_cast<long>(n) * step) bad = n;
    }
    report.check("linear growth lower bound", !bad,
                 {{"first_increment", str(step)}, {"first_violation", bad ? str(*bad) : "none"}});
  }
  report.notes.push_back("final distance " + str(orbit.distances.back()));
  return report;
}

TreeOrbitLimit tree_orbit_limit_trace(const FreeAutomorphism& phi, const TreeLengthFunction& t0,
                                      int level, std::size_t cap) {
  if (phi.basis() != t0.basis()) throw Error(ErrorCode::kBasisMismatch, "automorphism and tree over different bases");
  TreeOrbitLimit out{ProjectiveTreeVector(level, {}), test_classes(t0.basis(), level), {}, false};
  const FreeAutomorphism inverse = invert(phi);
  out.growth.resize(out.classes.size());
  parallel_for(out.classes.size(), [&](std::size_t i) {
    const CyclicWord& g = out.classes[i];
    Word w = g.linear();
    bool first = true;
    auto next = [&]() {
      if (!first) w = cyclic_word(apply(inverse, w)).linear();
      first = false;
      return length(t0, w);
    };
    GrowthOptions options;
    options.cap = cap;
    options.start = g.size();
    out.growth[i] = extract_growth(next, options, "tree orbit of class [" + g.to_string() + "]");
  });
  std::vector<Rational> values;
  values.reserve(out.growth.size());
  for (const auto& g : out.growth) values.push_back(g.slope);
  if (std::all_of(values.begin(), values.end(), [](const Rational& v) { return sgn(v) == 0; })) {
    out.used_constants = true;
    values.clear();
    for (const auto& g : out.growth) values.push_back(g.value_at_start);
  }
  out.limit = normalize_tree_values(level, out.classes, values);
  return out;
}

Escape escape_from_critical(const RationalCurrent& nu) {
  const Basis basis = nu.basis();
  require_rank(basis.rank(), 3, "escape_from_critical");
  if (nu.is_zero()) throw Error(ErrorCode::kZeroCurrent, "escape_from_critical of the zero current");
  const CoordinateTable table(nu, 2);
  auto single = [&](int i) { return table(Word::letter(basis, Letter::generator(i))); };
  auto pair = [&](Letter p, Letter q) { return table(free_reduce(basis, std::vector<Letter>{p, q})); };

  // Critical-set test for x -> x y with x the heaviest letter and y, z the
  // first two other letters. On that set the two-letter reads starting with
  // x are all x y^{+-1}, so (x z) and (x z^-1) must vanish.
  int heaviest = 1;
  for (int i = 2; i <= basis.rank(); ++i) {
    if (single(i) > single(heaviest)) heaviest = i;
  }
  std::vector<int> others;
  for (int i = 1; i <= basis.rank() && others.size() < 2; ++i) {
    if (i != heaviest) others.push_back(i);
  }
  const Letter x0 = Letter::generator(heaviest);
  const Letter z0 = Letter::generator(others[1]);
  const bool critical = in_critical_set(nu, x0, Letter::generator(others[0]));
  if (critical && (sgn(pair(x0, z0)) != 0 || sgn(pair(x0, z0.inverse())) != 0)) {
    throw Error(ErrorCode::kValidationFailure,
                "critical current with (" + std::string(1, x0.symbol()) + z0.symbol() + ") = " +
                    str(pair(x0, z0)) + ", (" + x0.symbol() + z0.inverse().symbol() + ") = " +
                    str(pair(x0, z0.inverse())));
  }

  // Among all twists x -> x y and both directions, take the largest first
  // length increment (x) - 2 (x y^-+1); it is positive for some choice.
  std::optional<Escape> best;
  for (int i = 1; i <= basis.rank(); ++i) {
    const Rational cx = single(i);
    if (sgn(cx) == 0) continue;
    const Letter x = Letter::generator(i);
    for (int j = 1; j <= basis.rank(); ++j) {
      if (j == i) continue;
      const Letter y = Letter::generator(j);
      const Rational with_y = pair(x, y);
      const Rational with_inverse_y = pair(x, y.inverse());
      for (int direction : {1, -1}) {
        const Rational increment = cx - 2 * (direction > 0 ? with_inverse_y : with_y);
        if (sgn(increment) <= 0 || (best && increment <= best->increment)) continue;
        best = Escape{make_simple_twist(basis, x, y), direction, x, y, cx, with_y, with_inverse_y, increment, critical};
      }
    }
  }
  if (!best) throw Error(ErrorCode::kValidationFailure, "no twist increases the length of " + nu.to_string());
  return *best;
}

ConvergenceReport run_theorem_main(int rank, int iterations, int level, std::size_t cap) {
  require_rank(rank, 5, "theorem-main");
  require_positive(iterations, "iterations");
  require_positive(level, "level");
  const Basis basis{rank};
  ConvergenceReport report;
  report.experiment = "theorem-main";
  report.claim =
      "lim phi^n [T_D'] = lim phi^n [T_D''] = [Delta(1,1)] while lim phi^n [mu_b'] = [mu_b] "
      "and lim phi^n [mu_b''] = [mu_d]; phi^n(a^-1 c) = b^-n a^-1 c";
  report.params = {{"rank", str(rank)}, {"iterations", str(iterations)}, {"level", str(level)}, {"cap", str(cap)}};

  const FreeAutomorphism phi = make_double_twist(basis);
  const FreeAutomorphism prime = make_basis_change_prime(basis);
  const FreeAutomorphism dprime = make_basis_change_double_prime(basis);
  const auto core = TwistSplittingCore::simple(basis, letter('a'), letter('b'));
  const TreeLengthFunction t_prime(core, prime, 1);
  const TreeLengthFunction t_dprime(core, dprime, 1);
  const TreeLengthFunction delta(TwistSplittingCore::double_twist(basis, 1, 1));
  const ProjectiveTreeVector delta_vector = projective_tree_vector(delta, level);

  report.check("basis images b' = a^-1 c, b'' = e^-1 c",
               apply(prime, word(basis, "b")) == word(basis, "Ac") &&
                   apply(dprime, word(basis, "b")) == word(basis, "Ec"),
               {{"b'", apply(prime, word(basis, "b")).to_string()},
                {"b''", apply(dprime, word(basis, "b")).to_string()}});
  const Rational b_prime = length(t_prime, word(basis, "b"));
  const Rational d_prime = length(t_prime, word(basis, "d"));
  const Rational b_dprime = length(t_dprime, word(basis, "b"));
  const Rational d_dprime = length(t_dprime, word(basis, "d"));
  report.check("||b|| = ||d|| = 1 on T_D' and T_D''",
               b_prime == 1 && d_prime == 1 && b_dprime == 1 && d_dprime == 1,
               {{"||b||_T_D'", str(b_prime)},
                {"||d||_T_D'", str(d_prime)},
                {"||b||_T_D''", str(b_dprime)},
                {"||d||_T_D''", str(d_dprime)}});

  const RationalCurrent mu_b = RationalCurrent::counting(word(basis, "b"));
  const RationalCurrent mu_d = RationalCurrent::counting(word(basis, "d"));
  const Rational separation = projective_distance(mu_b, mu_d, 1);
  report.check("limit currents separated at level 1", separation == 1, {{"distance(mu_b, mu_d)", str(separation)}});

  for (int direction : {1, -1}) {
    const std::string tag = direction > 0 ? "phi^n" : "phi^-n";
    const FreeAutomorphism psi = direction > 0 ? phi : invert(phi);

    const TreeOrbitLimit lim_prime = tree_orbit_limit_trace(psi, t_prime, level, cap);
    const TreeOrbitLimit lim_dprime = tree_orbit_limit_trace(psi, t_dprime, level, cap);
    report.check("tree limits coincide (" + tag + ")", lim_prime.limit == lim_dprime.limit,
                 tree_vector_witness(lim_prime.limit, lim_dprime.limit, "T_D'", "T_D''"));
    report.check("tree limit is [Delta(1,1)] (" + tag + ")",
                 lim_prime.limit == delta_vector && lim_dprime.limit == delta_vector,
                 tree_vector_witness(lim_prime.limit, delta_vector, "limit", "Delta(1,1)"));
    report.tables.push_back(tree_limit_table("tree limits " + tag, {"T_D'", "T_D''", "Delta(1,1)"},
                                             {&lim_prime.limit, &lim_dprime.limit, &delta_vector}));

    // phi^{+-n}(a^-1 c) = b^{-+n} a^-1 c and likewise with e, d.
    Word orbit_word = word(basis, "Ac");
    std::optional<int> bad_word;
    for (int n = 1; n <= iterations && !bad_word; ++n) {
      orbit_word = apply(psi, orbit_word);
      const Word expected = concat(power(word(basis, "b"), -direction * n), word(basis, "Ac"));
      if (orbit_word != expected) bad_word = n;
    }
    report.check("closed form of " + tag + "(a^-1 c)", !bad_word,
                 {{"n", bad_word ? str(*bad_word) : str(iterations)}, {"word", orbit_word.to_string()}});

    const CurrentOrbit to_b = current_orbit(psi, RationalCurrent::counting(word(basis, "Ac")), iterations, 1, mu_b);
    const CurrentOrbit to_d = current_orbit(psi, RationalCurrent::counting(word(basis, "Ec")), iterations, 1, mu_d);
    for (const auto* orbit : {&to_b, &to_d}) {
      const bool is_b = orbit == &to_b;
      std::optional<std::size_t> bad;
      for (std::size_t n = 0; n < orbit->distances.size() && !bad; ++n) {
        if (orbit->distances[n] != ratio(2, static_cast<long>(n) + 2)) bad = n;
      }
      const std::string name = std::string("level-1 distance of ") + tag + (is_b ? " mu_b' to mu_b" : " mu_b'' to mu_d") +
                               " is 2/(n+2)";
      report.check(name, !bad,
                   {{"n", bad ? str(*bad) : str(iterations)},
                    {"distance", str(orbit->distances[bad ? *bad : orbit->distances.size() - 1])}});
    }
    ReportTable table{"current orbits " + tag, {"n", "distance(mu_b' orbit, mu_b)", "distance(mu_b'' orbit, mu_d)",
                                                "distance between orbits"}, {}};
    for (std::size_t n = 0; n < to_b.distances.size(); ++n) {
      table.rows.push_back({str(n), str(to_b.distances[n]), str(to_d.distances[n]),
                            str(projective_distance(to_b.vectors[n], to_d.vectors[n]))});
    }
    report.tables.push_back(std::move(table));
  }
  report.notes.push_back(
      "tree limits are exact eventual slopes; current limits are certified by the exact rate 2/(n+2)");
  return report;
}

ConvergenceReport run_theorem_back(int rank) {
  require_rank(rank, 3, "theorem-back");
  const Basis basis{rank};
  ConvergenceReport report;
  report.experiment = "theorem-back";
  report.claim = "||c'||_{T_D} = 1 and ||c'||_{T_D'} = 0 for c' = ca, while D and D' fix mu_b";
  report.params = {{"rank", str(rank)}, {"level", "2"}};

  const FreeAutomorphism D = make_simple_twist(basis, letter('a'), letter('b'));
  const FreeAutomorphism change = make_basis_change_ca(basis);
  const FreeAutomorphism D_prime = compose(compose(change, D), invert(change));
  const TreeLengthFunction t_d(TwistSplittingCore::simple(basis, letter('a'), letter('b')));
  const TreeLengthFunction t_d_prime = t_d.acted_on_by(change);
  const Word ca = word(basis, "ca");

  report.check("D' is the twist a -> ab of the basis a, b, ca",
               apply(D_prime, word(basis, "a")) == word(basis, "ab") && apply(D_prime, ca) == ca &&
                   apply(D_prime, word(basis, "b")) == word(basis, "b"),
               {{"D'(a)", apply(D_prime, word(basis, "a")).to_string()},
                {"D'(ca)", apply(D_prime, ca).to_string()}});
  const Rational on_d = length(t_d, ca);
  const Rational on_d_prime = length(t_d_prime, ca);
  report.check("||ca||_{T_D} = 1", on_d == 1, {{"word", "ca"}, {"length", str(on_d)}});
  report.check("||ca||_{T_D'} = 0", on_d_prime == 0, {{"word", "ca"}, {"length", str(on_d_prime)}});

  const ProjectiveTreeVector p = projective_tree_vector(t_d, 2);
  const ProjectiveTreeVector q = projective_tree_vector(t_d_prime, 2);
  const CyclicWord witness = cyclic_word(ca);
  report.check("[T_D] != [T_D'] at level 2", !tree_projective_eq(p, q),
               {{"witness_class", "ca"},
                {"stored_as", witness.to_string()},
                {"T_D", str(p.entry(witness))},
                {"T_D'", str(q.entry(witness))}});
  report.tables.push_back(tree_limit_table("projective tree vectors", {"T_D", "T_D'"}, {&p, &q}));

  const RationalCurrent mu_b = RationalCurrent::counting(word(basis, "b"));
  report.check("D and D' fix mu_b", act(D, mu_b) == mu_b && act(D_prime, mu_b) == mu_b,
               {{"D mu_b", act(D, mu_b).to_string()}, {"D' mu_b", act(D_prime, mu_b).to_string()}});
  return report;
}

ConvergenceReport run_product_minimal(int rank, int iterations, int level, std::size_t cap) {
  require_rank(rank, 5, "product-minimal");
  require_positive(iterations, "iterations");
  require_positive(level, "level");
  const Basis basis{rank};
  ConvergenceReport report;
  report.experiment = "product-minimal";
  report.claim = "lim D^n ([T], [nu]) = ([T_D], [mu_b]) for T = T_D', nu = mu_a";
  report.params = {{"rank", str(rank)}, {"iterations", str(iterations)}, {"level", str(level)}, {"cap", str(cap)}};

  const Letter a = letter('a');
  const Letter b = letter('b');
  const FreeAutomorphism D = make_simple_twist(basis, a, b);
  const auto core = TwistSplittingCore::simple(basis, a, b);
  const TreeLengthFunction seed_tree(core, make_basis_change_prime(basis), 1);
  const TreeLengthFunction t_d(core);
  const RationalCurrent mu_a = RationalCurrent::counting(word(basis, "a"));
  const RationalCurrent mu_b = RationalCurrent::counting(word(basis, "b"));

  const Rational b_length = length(seed_tree, word(basis, "b"));
  report.check("||b||_{T_D'} > 0", sgn(b_length) > 0, {{"||b||", str(b_length)}});
  const CriticalSetWitness crit = critical_set_witness(mu_a, a, b);
  report.check("[mu_a] is off the critical set", !crit.in_set,
               {{"(a)/2", str(crit.half_twisted)}, {"(ab)", str(crit.with_twistor)}, {"(ab^-1)", str(crit.with_inverse_twistor)}});

  const TreeOrbitLimit limit = tree_orbit_limit_trace(D, seed_tree, level, cap);
  const ProjectiveTreeVector expected = projective_tree_vector(t_d, level);
  report.check("tree orbit limit is [T_D]", limit.limit == expected,
               tree_vector_witness(limit.limit, expected, "limit", "T_D"));
  report.tables.push_back(tree_limit_table("tree limit", {"limit", "T_D"}, {&limit.limit, &expected}));

  const CurrentOrbit orbit = current_orbit(D, mu_a, iterations, level, mu_b);
  ReportTable table{"current orbit", {"n", "length", "distance", "bound L*||mu_a||/||D^n mu_a||"}, {}};
  std::optional<std::size_t> bad;
  for (std::size_t n = 0; n < orbit.distances.size(); ++n) {
    const Rational bound = Rational(level) * length(mu_a) / orbit.lengths[n];
    if (orbit.distances[n] > bound && !bad) bad = n;
    table.rows.push_back({str(n), str(orbit.lengths[n]), str(orbit.distances[n]), str(bound)});
  }
  report.tables.push_back(std::move(table));
  report.check("current distance to mu_b <= L*||mu_a||/||D^n mu_a||", !bad,
               {{"n", bad ? str(*bad) : str(iterations)},
                {"distance", str(orbit.distances[bad ? *bad : orbit.distances.size() - 1])}});
  return report;
}

Rational primitive_limit_bound(const Word& u, int n, int level) {
  const std::size_t h = conjugator_length(u);
  const long core = static_cast<long>(u.size() - 2 * h);
  const long s = static_cast<long>(2 * h + 1);
  return ratio(2 * s + level - 1, n * core + s);
}

ConvergenceReport run_primitive_limit(int rank, const Word& u, int iterations, int level) {
  require_rank(rank, 3, "primitive-limit");
  require_positive(iterations, "iterations");
  require_positive(level, "level");
  const Basis basis{rank};
  if (u.basis() != basis) throw Error(ErrorCode::kBasisMismatch, "word over a different basis");
  if (u.empty()) throw Error(ErrorCode::kIdentityElement, "primitive-limit needs a nontrivial u");
  if (std::any_of(u.begin(), u.end(), [](Letter x) { return x.index() > 2; })) {
    throw Error(ErrorCode::kInvalidArgument, "primitive-limit needs u in the letters a, b; got " + u.to_string());
  }
  ConvergenceReport report;
  report.experiment = "primitive-limit";
  report.claim = "g_n = c u^n is primitive and lim [mu_{g_n}] = [mu_u]";
  report.params = {{"rank", str(rank)}, {"u", u.to_string()}, {"iterations", str(iterations)}, {"level", str(level)}};

  const RationalCurrent mu_u = RationalCurrent::counting(u);
  const Word c = word(basis, "c");
  ReportTable table{"distances", {"n", "g_n length", "distance", "bound"}, {}};
  std::vector<Rational> distances;
  std::optional<int> over_bound;
  for (int n = 0; n <= iterations; ++n) {
    const Word g = concat(c, power(u, n));
    distances.push_back(projective_distance(RationalCurrent::counting(g), mu_u, level));
    std::string bound = "-";
    if (n >= 1) {
      const Rational b = primitive_limit_bound(u, n, level);
      if (distances.back() > b && !over_bound) over_bound = n;
      bound = str(b);
    }
    table.rows.push_back({str(n), str(cyclic_word(g).size()), str(distances.back()), bound});
  }
  report.tables.push_back(std::move(table));

  const Rational sanity = projective_distance(RationalCurrent::counting(c), mu_u, level);
  report.check("n = 0 row is the distance from mu_c to mu_u", distances.front() == sanity,
               {{"distance", str(distances.front())}});
  report.check("distance <= (2s + L - 1)/(n|u'| + s)", !over_bound,
               {{"n", over_bound ? str(*over_bound) : str(iterations)},
                {"distance", str(distances[over_bound ? static_cast<std::size_t>(*over_bound) : distances.size() - 1])}});
  const std::size_t tail = static_cast<std::size_t>(iterations) / 2;
  const auto rise = first_increase(distances, tail);
  report.check("distance nonincreasing from n = N/2", !rise,
               {{"from", str(tail)}, {"first_increase", rise ? str(*rise) : "none"}});

  // c -> c u^N, inverse c -> c u^-N, is an automorphism, so c u^N is primitive.
  std::vector<Word> images;
  std::vector<Word> inverse_images;
  for (int i = 1; i <= rank; ++i) {
    const Word x = Word::letter(basis, Letter::generator(i));
    images.push_back(i == 3 ? concat(c, power(u, iterations)) : x);
    inverse_images.push_back(i == 3 ? concat(c, power(u, -iterations)) : x);
  }
  const FreeAutomorphism witness(basis, images, inverse_images);
  report.check("c u^N is primitive", witness.verify(),
               {{"basis", "a, b, " + images[2].to_string() + (rank > 3 ? ", ..." : "")}});
  report.notes.push_back("the rate constant is derived from read counting, not taken from the literature");
  return report;
}

ConvergenceReport run_off_critical_perturbation(int rank, const Word& g, const Word& f, int iterations,
                                                int level) {
  require_rank(rank, 3, "off-critical");
  require_positive(level, "level");
  if (iterations < 2) throw Error(ErrorCode::kInvalidArgument, "off-critical needs iterations >= 2");
  const Basis basis{rank};
  if (g.basis() != basis || f.basis() != basis) throw Error(ErrorCode::kBasisMismatch, "words over a different basis");
  if (g.empty() || f.empty()) throw Error(ErrorCode::kIdentityElement, "off-critical needs nontrivial g and f");
  const Letter a = letter('a');
  const Letter b = letter('b');
  const std::size_t a_in_f = count_letter(f, a);
  const std::size_t a_in_g = count_letter(g, a);
  if (a_in_f % 2 != 1 || a_in_g % 2 != 0) {
    throw Error(ErrorCode::kParityPrecondition,
                "off-critical needs an odd number of a^{+-1} in f and an even number in g (got " +
                    std::to_string(a_in_f) + " and " + std::to_string(a_in_g) + ")");
  }
  ConvergenceReport report;
  report.experiment = "off-critical";
  report.claim = "[mu_{g^n f}] is off the critical set and tends to [mu_g]";
  report.params = {{"rank", str(rank)}, {"g", g.to_string()}, {"f", f.to_string()},
                   {"iterations", str(iterations)}, {"level", str(level)}};

  const RationalCurrent mu_g = RationalCurrent::counting(g);
  if (!in_critical_set(mu_g, a, b)) {
    report.notes.push_back("[mu_g] is already off the critical set; the perturbation is unnecessary");
  }
  ReportTable table{"orbit", {"n", "(a)/2", "(ab)", "(ab^-1)", "in critical set", "distance", "2|f|/(n|g|)"}, {}};
  std::vector<Rational> distances;
  std::optional<int> inside;
  for (int n = 1; n <= iterations; ++n) {
    const RationalCurrent nu = RationalCurrent::counting(concat(power(g, n), f));
    const CriticalSetWitness w = critical_set_witness(nu, a, b);
    if (w.in_set && !inside) inside = n;
    distances.push_back(projective_distance(nu, mu_g, level));
    const Rational rate = ratio(2 * static_cast<long>(f.size()), n * static_cast<long>(g.size()));
    table.rows.push_back({str(n), str(w.half_twisted), str(w.with_twistor), str(w.with_inverse_twistor),
                          str(w.in_set), str(distances.back()), str(rate)});
  }
  report.tables.push_back(std::move(table));
  report.check("every [mu_{g^n f}] is off the critical set", !inside, {{"n", inside ? str(*inside) : "none"}});
  report.check("distance at N below distance at 1", distances.back() < distances.front(),
               {{"d_1", str(distances.front())}, {"d_N", str(distances.back())}});
  const std::size_t tail = distances.size() - 1 - (distances.size() - 1) / 4;
  const auto rise = first_increase(distances, tail);
  report.check("distance nonincreasing over the last quarter", !rise,
               {{"from_n", str(tail + 1)}, {"first_increase_n", rise ? str(*rise + 1) : "none"}});
  report.notes.push_back("the column 2|f|/(n|g|) is a reported rate, not an asserted bound");
  return report;
}

ConvergenceReport run_outlook_identity(int rank, int iterations, std::uint64_t seed) {
  require_rank(rank, 3, "outlook-identity");
  require_positive(iterations, "iterations");
  const Basis basis{rank};
  ConvergenceReport report;
  report.experiment = "outlook-identity";
  report.claim = "I((1/n) D^n T, (1/(n+1)) D^n mu_a) = I(T, mu_a)/(n(n+1)) -> 0";
  report.params = {{"rank", str(rank)}, {"iterations", str(iterations)}, {"seed", str(static_cast<std::size_t>(seed))}};

  const FreeAutomorphism D = make_simple_twist(basis, letter('a'), letter('b'));
  const TreeLengthFunction cayley = TreeLengthFunction::cayley(basis);
  const RationalCurrent mu_a = RationalCurrent::counting(word(basis, "a"));
  ReportTable table{"pairings", {"n", "||D^n mu_a||", "I", "1/(n(n+1))"}, {}};
  std::optional<int> bad;
  FreeAutomorphism Dn = FreeAutomorphism::identity(basis);
  for (int n = 1; n <= iterations; ++n) {
    Dn = compose(D, Dn);
    const RationalCurrent orbit = act(Dn, mu_a);
    const TreeLengthFunction tree = cayley.acted_on_by(Dn).scaled(Rational(1, n));
    const Rational value = intersection_form(tree, scale(Rational(1, n + 1), orbit));
    const Rational expected = ratio(1, static_cast<long>(n) * (n + 1));
    if (value != expected && !bad) bad = n;
    table.rows.push_back({str(n), str(length(orbit)), str(value), str(expected)});
  }
  report.tables.push_back(std::move(table));
  report.check("I = 1/(n(n+1)) for n = 1..N", !bad, {{"n", bad ? str(*bad) : str(iterations)}});

  Rng rng(seed);
  std::optional<std::string> broken;
  for (int trial = 0; trial < 50 && !broken; ++trial) {
    const Word g = random_cyclic_word(basis, 20, rng);
    const RationalCurrent mu_g = RationalCurrent::counting(g);
    if (intersection_form(cayley.acted_on_by(D), act(D, mu_g)) != intersection_form(cayley, mu_g)) broken = g.to_string();
  }
  report.check("I(D T, D mu_g) = I(T, mu_g) on 50 random g", !broken, {{"counterexample", broken.value_or("none")}});

  const ProjectiveTreeVector limit = tree_orbit_limit(D, cayley, 2);
  const ProjectiveTreeVector t_d =
      projective_tree_vector(TreeLengthFunction(TwistSplittingCore::simple(basis, letter('a'), letter('b'))), 2);
  report.check("(1/n) D^n T tends to [T_D] at level 2", limit == t_d,
               tree_vector_witness(limit, t_d, "limit", "T_D"));
  return report;
}

ConvergenceReport run_minimality_walk(int rank, int trials, int steps, std::uint64_t seed) {
  require_rank(rank, 3, "minimality-walk");
  require_positive(trials, "trials");
  require_positive(steps, "steps");
  const Basis basis{rank};
  ConvergenceReport report;
  report.experiment = "minimality-walk";
  report.claim = "every nonzero [nu] has a simple-twist orbit tending to some [mu_x], x a basis letter";
  report.params = {{"rank", str(rank)}, {"trials", str(trials)}, {"steps", str(steps)},
                   {"seed", str(static_cast<std::size_t>(seed))}};

  Rng rng(seed);
  std::vector<RationalCurrent> seeds;
  for (int t = 0; t < trials; ++t) seeds.push_back(random_current(basis, 3, 12, rng));

  struct Walk {
    std::optional<Escape> escape;
    std::string error;
    std::optional<std::size_t> reached;
    Rational final_distance;
  };
  std::vector<Walk> walks(seeds.size());
  const Rational threshold(1, 10);
  parallel_for(seeds.size(), [&](std::size_t i) {
    try {
      walks[i].escape = escape_from_critical(seeds[i]);
    } catch (const Error& e) {
      walks[i].error = e.what();
      return;
    }
    const Escape& e = *walks[i].escape;
    const CurrentOrbit orbit =
        current_orbit(power(e.twist, e.direction), seeds[i], steps, 1, RationalCurrent::counting(Word::letter(basis, e.target)));
    for (std::size_t n = 0; n < orbit.distances.size(); ++n) {
      if (orbit.distances[n] <= threshold) {
        walks[i].reached = n;
        break;
      }
    }
    walks[i].final_distance = orbit.distances.back();
  });

  ReportTable table{"walks", {"trial", "current", "twist", "direction", "target", "critical", "steps to 1/10", "final distance"}, {}};
  std::map<std::string, int> branches;
  std::optional<std::size_t> failed_escape;
  std::optional<std::size_t> failed_walk;
  std::size_t slowest = 0;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    const Walk& w = walks[i];
    if (!w.escape) {
      if (!failed_escape) failed_escape = i;
      table.rows.push_back({str(i), seeds[i].to_string(), "error: " + w.error, "-", "-", "-", "-", "-"});
      continue;
    }
    const Escape& e = *w.escape;
    ++branches[e.in_critical_set ? "critical" : (e.direction > 0 ? "forward" : "backward")];
    if (!w.reached && !failed_walk) failed_walk = i;
    if (w.reached) slowest = std::max(slowest, *w.reached);
    table.rows.push_back({str(i), seeds[i].to_string(), twist_name(e.twisted, e.target), str(e.direction),
                          std::string(1, e.target.symbol()), str(e.in_critical_set),
                          w.reached ? str(*w.reached) : "-", str(w.final_distance)});
  }
  report.tables.push_back(std::move(table));
  report.check("escape_from_critical is total", !failed_escape,
               {{"trial", failed_escape ? str(*failed_escape) : "none"},
                {"forward", str(branches["forward"])},
                {"backward", str(branches["backward"])},
                {"critical", str(branches["critical"])}});
  report.check("every walk reaches distance 1/10 within the step budget", !failed_walk,
               {{"trial", failed_walk ? str(*failed_walk) : "none"}, {"slowest", str(slowest)}});
  return report;
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"theorem-main",    "theorem-back", "product-minimal",
                                            "primitive-limit", "off-critical", "outlook-identity",
                                            "minimality-walk"};
  return ids;
}

ConvergenceReport run_experiment(const std::string& id, const ExperimentConfig& config) {
  const auto known = experiment_ids();
  if (std::find(known.begin(), known.end(), id) == known.end()) {
    std::string list;
    for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
    throw Error(ErrorCode::kUnknownExperiment, "unknown experiment '" + id + "' (known: " + list + ")");
  }
  if (config.rank < 2 || config.rank > Basis::kMaxRank) {
    require_rank(config.rank, 2, id);
  }
  const Basis basis{std::max(config.rank, 2)};
  auto word_or = [&](const std::string& text, const char* fallback) {
    return Word::parse(basis, text.empty() ? fallback : text);
  };
  if (id == "theorem-main") return run_theorem_main(config.rank, config.iterations, config.level, config.cap);
  if (id == "theorem-back") return run_theorem_back(config.rank);
  if (id == "product-minimal") return run_product_minimal(config.rank, config.iterations, config.level, config.cap);
  require_rank(config.rank, 3, id);
  if (id == "primitive-limit") {
    return run_primitive_limit(config.rank, word_or(config.word, "ab"), config.iterations, config.level);
  }
  if (id == "off-critical") {
    return run_off_critical_perturbation(config.rank, word_or(config.word, "abaB"), word_or(config.perturbation, "a"),
                                         config.iterations, config.level);
  }
  if (id == "outlook-identity") return run_outlook_identity(config.rank, config.iterations, config.seed);
  return run_minimality_walk(config.rank, 200, config.iterations, config.seed);
}

}  // namespace currents_lab
