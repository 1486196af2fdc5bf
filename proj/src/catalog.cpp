#include "ahlab/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <random>
#include <thread>

#include "ahlab/fields.hpp"

namespace ahlab {

namespace {

Vec basis(int n, int i) {
  Vec v(n, Scalar(0));
  v[i] = Scalar(1);
  return v;
}

// Random field lying in the advertised kernel pair (exact coefficients, so
// membership is verified symbolically inside kato_spot_check).
PolyTensorField kernel_field(KatoKernel kind, int n, int k, const Metric& h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coin(-4, 4);
  auto rnd = [&]() { return Scalar(coin(rng)); };
  if (kind == KatoKernel::k_div) {
    // Repeated coordinate derivatives of a harmonic polynomial: trace-free,
    // curl-free and divergence-free.
    Polynomial f = random_harmonic(n, k + 1, h, seed);
    PolyTensorField w(n, k);
    for_each_sorted_index(n, k, [&](const Index& s) {
      Polynomial p = f;
      for (int v : s) p = p.derivative(v);
      w.add(s, p);
    });
    return w;
  }
  PolyTensorField w(n, 1);
  if (kind == KatoKernel::l_div) {
    // Infinitesimal rigid motion: X = a + B x with B antisymmetric.
    std::vector<std::vector<Scalar>> B(n, std::vector<Scalar>(n, Scalar(0)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        B[i][j] = rnd();
        B[j][i] = -B[i][j];
      }
    for (int i = 0; i < n; ++i) {
      Polynomial p = Polynomial::constant(n, rnd());
      for (int j = 0; j < n; ++j) p += B[i][j] * Polynomial::variable(n, j);
      w.add({i}, p);
    }
  } else {
    // Gradient of c |x|^2 / 2 + <a, x>: conformal Killing and curl-free.
    Scalar cc = rnd() + Scalar(5);  // keep it nonzero
    for (int i = 0; i < n; ++i)
      w.add({i}, cc * Polynomial::variable(n, i) + Polynomial::constant(n, rnd()));
  }
  return w;
}

// ---- Certificate builders --------------------------------------------------

void append_kappa_checks(Certificate& cert, const Polynomial& p, const Metric& h,
                         const std::optional<Scalar>& expect, const CheckContext& ctx) {
  cert.checks.push_back(ctx.bool_check("homogeneous-cubic", p.is_homogeneous(3)));
  auto kappa = check_einstein_polynomials(p, h);
  cert.checks.push_back(ctx.bool_check("hessian-norm-proportional", kappa.has_value()));
  if (kappa) cert.checks.push_back(ctx.scalar_check("kappa", *kappa, expect.value_or(*kappa)));
}

}  // namespace

Certificate certify_polynomial(const Polynomial& p, const Metric& h, const std::string& subject,
                               const CheckContext& ctx) {
  Certificate cert{subject, ctx.float_mode, ctx.tol};
  append_kappa_checks(cert, p, h, std::nullopt, ctx);
  return cert;
}

Certificate certify_algebra(const CodazziAlgebra& a, const std::vector<std::string>& which,
                            const std::string& subject, const CheckContext& ctx) {
  Certificate cert{subject, ctx.float_mode, ctx.tol};
  auto wants = [&](const std::string& name) {
    return which.empty() || std::find(which.begin(), which.end(), name) != which.end();
  };
  auto kappa = a.einstein_constant();
  if (wants("einstein")) {
    cert.checks.push_back(ctx.bool_check("einstein", kappa.has_value()));
    if (kappa)
      cert.checks.push_back(ctx.scalar_check("kappa", *kappa, norm2(a.mu, a.h) / Scalar(a.n)));
  }
  if (wants("special")) cert.checks.push_back(ctx.bool_check("special", a.is_special()));
  if (wants("conf-assoc")) {
    if (!kappa) {
      cert.checks.push_back(ctx.bool_check("conformally-associative (needs Einstein)", false));
    } else {
      bool ca = a.is_conformally_associative();
      cert.checks.push_back(ctx.bool_check("conformally-associative", ca));
      if (!ca) {
        // Report a failing basis probe, preferring distinct increasing
        // indices so the witness is as readable as possible.
        auto probe_at = [&](int i, int j, int k, int l) {
          auto [lhs, rhs] = a.conf_assoc_probe(basis(a.n, i), basis(a.n, j), basis(a.n, k),
                                               basis(a.n, l));
          if (lhs == rhs) return false;
          cert.checks.push_back(ctx.scalar_check(
              "associator-probe (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                  std::to_string(k + 1) + "," + std::to_string(l + 1) + ")",
              lhs, rhs));
          return true;
        };
        bool reported = false;
        for (int i = 0; i < a.n && !reported; ++i)
          for (int j = i + 1; j < a.n && !reported; ++j)
            for (int k = j + 1; k < a.n && !reported; ++k)
              for (int l = k + 1; l < a.n && !reported; ++l) reported = probe_at(i, j, k, l);
        for (int i = 0; i < a.n && !reported; ++i)
          for (int j = 0; j < a.n && !reported; ++j)
            for (int k = 0; k < a.n && !reported; ++k)
              for (int l = 0; l < a.n && !reported; ++l) reported = probe_at(i, j, k, l);
      }
    }
  }
  if (wants("assoc")) cert.checks.push_back(ctx.bool_check("associative", a.is_associative()));
  return cert;
}

Certificate certify_invariant(const InvariantAH& s, const std::string& subject,
                              const CheckContext& ctx) {
  Certificate cert{subject, ctx.float_mode, ctx.tol};
  InvariantReport rep = invariant_curvature(s);
  cert.checks.push_back(
      ctx.scalar_check("scalar-curvature-identity", rep.scalar,
                       Scalar(Rat(s.lie.n, 4)) - norm2(s.gamma, s.h)));
  cert.checks.push_back(ctx.bool_check("symmetric-trace-block-vanishes",
                                       matrix_is_zero(rep.dec.Eij)));
  cert.checks.push_back(ctx.bool_check("conservative", rep.conservative));
  cert.checks.push_back(ctx.bool_check("einstein", rep.einstein.has_value()));
  if (rep.einstein)
    cert.checks.push_back(
        ctx.scalar_check("einstein-constant", *rep.einstein, rep.scalar / Scalar(s.lie.n)));
  return cert;
}

Certificate certify_jet(const JetData& jet, const std::string& subject, const CheckContext& ctx) {
  Certificate cert{subject, true, ctx.tol};  // jets are float by nature
  JetCurvatureReport rep = curvature_from_jet(jet);
  cert.checks.push_back(ctx.float_check("scalar-consistency", rep.consistency, 0.0, 1e-6));
  cert.checks.push_back(ctx.float_check("scalar", rep.scalar, rep.scalar, 0.0));
  cert.checks.push_back(ctx.float_check("torsion-norm2", rep.L_norm2, rep.L_norm2, 0.0));
  return cert;
}

// ---- Catalog entries -------------------------------------------------------

namespace {

struct Entry {
  std::string id;
  std::vector<std::string> tags;
  std::function<Certificate(const CheckContext&)> fn;
};

Certificate kappa_entry(const std::string& id, const Polynomial& p, const Scalar& expect,
                        const CheckContext& ctx) {
  Certificate cert{id, ctx.float_mode, ctx.tol};
  append_kappa_checks(cert, p, Metric::euclidean(p.dim()), expect, ctx);
  return cert;
}

Certificate flat_curvature_entry(const std::string& id, const Polynomial& p, bool a4_vanishes,
                                 const CheckContext& ctx) {
  Certificate cert{id, ctx.float_mode, ctx.tol};
  Metric h = Metric::euclidean(p.dim());
  CodazziAlgebra a = from_cubic(p, h);
  CurvatureReport rep = curvature_flat(FlatAHStructure(h, a.mu));
  cert.checks.push_back(ctx.bool_check("E4-vanishes", rep.dec.E4.is_zero()));
  cert.checks.push_back(ctx.bool_check("Eij-vanishes", matrix_is_zero(rep.dec.Eij)));
  cert.checks.push_back(ctx.scalar_check("scalar = -(1/4)|L|^2", rep.scalar,
                                         Scalar(Rat(-1, 4)) * norm2(a.mu, h)));
  cert.checks.push_back(ctx.bool_check("einstein-verdict", rep.verdicts.einstein.has_value()));
  cert.checks.push_back(ctx.bool_check("conservative", rep.verdicts.conservative));
  cert.checks.push_back(ctx.bool_check(a4_vanishes ? "A4-vanishes" : "A4-nonzero",
                                       rep.dec.A4.is_zero() == a4_vanishes));
  return cert;
}

std::vector<Entry> build_entries() {
  std::vector<Entry> es;
  auto add = [&](std::string id, std::vector<std::string> tags,
                 std::function<Certificate(const CheckContext&)> fn) {
    es.push_back({std::move(id), std::move(tags), std::move(fn)});
  };

  // Einstein constants of the named cubics.
  add("cubic/plane-harmonic-r1", {"kappa", "cubic"}, [](const CheckContext& c) {
    return kappa_entry("cubic/plane-harmonic-r1", cubic_plane_harmonic(Rat(1)), Scalar(72), c);
  });
  add("cubic/plane-harmonic-r2", {"kappa", "cubic"}, [](const CheckContext& c) {
    return kappa_entry("cubic/plane-harmonic-r2", cubic_plane_harmonic(Rat(2)), Scalar(288), c);
  });
  add("cubic/r3-standard", {"kappa", "cubic"}, [](const CheckContext& c) {
    return kappa_entry("cubic/r3-standard", cubic_r3_standard(), Scalar(54), c);
  });
  add("cubic/r4-complex", {"kappa", "cubic"}, [](const CheckContext& c) {
    return kappa_entry("cubic/r4-complex", cubic_r4_complex(), Scalar(4), c);
  });
  add("cubic/det3", {"kappa", "cubic"}, [](const CheckContext& c) {
    return kappa_entry("cubic/det3", cubic_det3(), Scalar(1), c);
  });
  add("cubic/symdet3", {"kappa", "cubic"}, [](const CheckContext& c) {
    Certificate cert = kappa_entry("cubic/symdet3", cubic_symdet3(), Scalar(3), c);
    // The identity holds even though this cubic is not harmonic.
    cert.checks.push_back(c.bool_check(
        "not-special", !from_cubic(cubic_symdet3(), Metric::euclidean(6)).is_special()));
    return cert;
  });
  add("cubic/pfaffian6", {"kappa", "cubic"}, [](const CheckContext& c) {
    Certificate cert = kappa_entry("cubic/pfaffian6", cubic_pfaffian6(), Scalar(6), c);
    cert.checks.push_back(
        c.bool_check("special", from_cubic(cubic_pfaffian6(), Metric::euclidean(15)).is_special()));
    return cert;
  });
  add("cubic/triple-product", {"kappa", "cubic"}, [](const CheckContext& c) {
    return kappa_entry("cubic/triple-product", cubic_triple(Scalar(3)), Scalar(18), c);
  });
  add("cubic/two-parameter", {"kappa", "cubic"}, [](const CheckContext& c) {
    // 8 mu^2 + 2 lambda^2 at (lambda, mu) = (2, 3).
    return kappa_entry("cubic/two-parameter", cubic_two_parameter(Scalar(2), Scalar(3)),
                       Scalar(80), c);
  });
  for (int n = 2; n <= 8; ++n) {
    std::string id = "cubic/chain-n" + std::to_string(n);
    add(id, {"kappa", "chain", "conf-assoc"}, [id, n](const CheckContext& c) {
      Certificate cert = kappa_entry(id, cubic_chain(n), Scalar(n * (n - 1)), c);
      CodazziAlgebra a = from_cubic(cubic_chain(n), Metric::euclidean(n));
      cert.checks.push_back(c.bool_check("special", a.is_special()));
      cert.checks.push_back(
          c.bool_check("conformally-associative", a.is_conformally_associative()));
      return cert;
    });
  }

  // Isoparametric cubics for the four composition algebras.
  for (int m : {1, 2, 4, 8}) {
    std::string id = "cartan/m" + std::to_string(m);
    Scalar kappa(18 * (3 * m + 4));
    add(id, {"cartan", "kappa"}, [id, m, kappa](const CheckContext& c) {
      Polynomial p = isoparametric_cubic(m);
      Certificate cert = kappa_entry(id, p, kappa, c);
      cert.checks.push_back(c.bool_check("gradient-identity", isoparametric_check(p)));
      if (m == 1) {
        // [e1, e2, e3] = -27 sqrt(3) e_x - 27 e_y in the (z, y, x) coordinates.
        CodazziAlgebra a = from_cubic(p, Metric::euclidean(5));
        Vec assoc = a.associator(basis(5, 0), basis(5, 1), basis(5, 2));
        Vec expect(5, Scalar(0));
        expect[4] = Scalar(-27) * Scalar::root(Rat(1), Int(3));
        expect[3] = Scalar(-27);
        bool ok = assoc == expect;
        cert.checks.push_back(c.bool_check("associator-bracket", ok));
        cert.checks.push_back(c.scalar_check("bracket-x-component", assoc[4], expect[4]));
      }
      return cert;
    });
  }

  // Conformal associativity probes.
  add("algebra/r4-complex-probe", {"conf-assoc"}, [](const CheckContext& c) {
    Certificate cert{"algebra/r4-complex-probe", c.float_mode, c.tol};
    CodazziAlgebra a = from_cubic(cubic_r4_complex(), Metric::euclidean(4));
    auto [lhs, rhs] = a.conf_assoc_probe(basis(4, 0), basis(4, 1), basis(4, 2), basis(4, 3));
    cert.checks.push_back(c.scalar_check("probe-lhs", lhs, Scalar(-2)));
    cert.checks.push_back(c.scalar_check("probe-rhs", rhs, Scalar(0)));
    cert.checks.push_back(
        c.bool_check("not-conformally-associative", !a.is_conformally_associative()));
    return cert;
  });
  add("algebra/nahm-so3", {"conf-assoc", "nahm", "kappa"}, [](const CheckContext& c) {
    Certificate cert{"algebra/nahm-so3", c.float_mode, c.tol};
    // Cross-product normalization pins the probe values below.
    LieAlgebraData so3(3, {{0, 1, 2, Scalar(1)}, {1, 2, 0, Scalar(1)}, {2, 0, 1, Scalar(1)}});
    CodazziAlgebra a = nahm(so3);
    cert.checks.push_back(c.scalar_check("kappa", a.einstein_constant().value_or(Scalar(0)),
                                         Scalar(1)));
    cert.checks.push_back(c.bool_check("special", a.is_special()));
    auto [lhs, rhs] = a.conf_assoc_probe(basis(9, 0), basis(9, 1), basis(9, 3), basis(9, 4));
    cert.checks.push_back(c.scalar_check("probe-lhs", lhs, Scalar(Rat(1, 4))));
    cert.checks.push_back(c.scalar_check("probe-rhs", rhs, Scalar(0)));
    return cert;
  });

  // Hessian-determinant identities.
  add("hessdet/syzygetic", {"hessdet"}, [](const CheckContext& c) {
    Certificate cert{"hessdet/syzygetic", c.float_mode, c.tol};
    // H(P_{a,b}) = P_{-6ab^2, a^3+2b^3}.
    struct Pin {
      int a, b, ra, rb;
    };
    for (const Pin& q : {Pin{1, 0, 0, 1}, Pin{0, 1, 0, 2}, Pin{1, 2, -24, 17}}) {
      auto res = hessian_det_check(cubic_syzygetic(Scalar(q.a), Scalar(q.b)));
      std::string tag = "(" + std::to_string(q.a) + "," + std::to_string(q.b) + ")";
      cert.checks.push_back(c.bool_check(
          "determinant " + tag, res.det == cubic_syzygetic(Scalar(q.ra), Scalar(q.rb))));
    }
    return cert;
  });
  add("hessdet/eigencubics", {"hessdet"}, [](const CheckContext& c) {
    Certificate cert{"hessdet/eigencubics", c.float_mode, c.tol};
    auto triple = hessian_det_check(cubic_triple(Scalar(3)));
    cert.checks.push_back(c.bool_check("triple-kappa-exists", triple.kappa.has_value()));
    if (triple.kappa)
      cert.checks.push_back(c.scalar_check("triple-kappa = 2b^2", *triple.kappa, Scalar(18)));
    Polynomial x1 = Polynomial::variable(3, 0), x2 = Polynomial::variable(3, 1),
               x3 = Polynomial::variable(3, 2);
    Scalar cc(2);
    auto pair = hessian_det_check(cc * (x3 * (x1 * x1 + x2 * x2)));
    cert.checks.push_back(c.bool_check("pair-kappa-exists", pair.kappa.has_value()));
    if (pair.kappa)
      cert.checks.push_back(c.scalar_check("pair-kappa = -8c^2", *pair.kappa, Scalar(-32)));
    auto none = hessian_det_check(x1 * (x1 * x1 + x2 * x2 + x3 * x3));
    cert.checks.push_back(c.bool_check("x1*E-no-proportionality", !none.kappa.has_value()));
    auto none2 = hessian_det_check(x1 * (x1 * x1 + Scalar(2) * (x2 * x2) + Scalar(3) * (x3 * x3)));
    cert.checks.push_back(c.bool_check("x1*F-no-proportionality", !none2.kappa.has_value()));
    return cert;
  });

  // Unitalization and the extension chain.
  add("unital/triple-product", {"unital"}, [](const CheckContext& c) {
    Certificate cert{"unital/triple-product", c.float_mode, c.tol};
    CodazziAlgebra a = from_cubic(cubic_triple(Scalar(1)), Metric::euclidean(3));
    cert.checks.push_back(c.scalar_check("kappa", *a.einstein_constant(), Scalar(2)));
    CodazziAlgebra u = unitalize(a);
    cert.checks.push_back(c.scalar_check("unital-kappa", *u.einstein_constant(), Scalar(4)));
    cert.checks.push_back(c.bool_check("unital-associative", u.is_associative()));
    // Diagonalization to (1/3) sum y_i^3 in the idempotent coordinates.
    int sigma[4][4] = {{1, -1, -1, 1}, {-1, 1, -1, 1}, {-1, -1, 1, 1}, {1, 1, 1, 1}};
    std::vector<std::vector<Scalar>> A(4, std::vector<Scalar>(4));
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) A[j][i] = Scalar(Rat(sigma[i][j], 2));
    Polynomial in_y = substitute_linear(u.cubic(), A);
    Polynomial expected(4);
    for (int i = 0; i < 4; ++i) {
      Polynomial yi = Polynomial::variable(4, i);
      expected += Scalar(Rat(1, 3)) * (yi * yi * yi);
    }
    cert.checks.push_back(c.bool_check("diagonalized-cubic", in_y == expected));
    return cert;
  });
  add("unital/extension-chain", {"unital", "chain"}, [](const CheckContext& c) {
    Certificate cert{"unital/extension-chain", c.float_mode, c.tol};
    CodazziAlgebra cur = from_cubic(cubic_chain(2), Metric::euclidean(2));
    for (int n = 2; n < 8; ++n) {
      cur = extend(cur, Rat(n * (n - 1)), Rat(n * (n + 1)));
      std::string tag = "n" + std::to_string(n + 1);
      cert.checks.push_back(c.scalar_check("kappa-" + tag, *cur.einstein_constant(),
                                           Scalar(n * (n + 1))));
      cert.checks.push_back(c.bool_check(
          "matches-chain-" + tag,
          cur.mu == from_cubic(cubic_chain(n + 1), Metric::euclidean(n + 1)).mu));
      cert.checks.push_back(c.bool_check("special-" + tag, cur.is_special()));
    }
    return cert;
  });

  // Flat AH curvature of the Einstein special algebras.
  struct FlatPin {
    std::string id;
    int mode;  // 0: cubic below, 1: nahm(so3)
    bool a4_zero;
  };
  auto flat_cubic = [](const std::string& id) -> Polynomial {
    if (id == "curvature/chain-n3") return cubic_chain(3);
    if (id == "curvature/chain-n5") return cubic_chain(5);
    if (id == "curvature/r4-complex") return cubic_r4_complex();
    if (id == "curvature/cartan-m1") return isoparametric_cubic(1);
    if (id == "curvature/cartan-m2") return isoparametric_cubic(2);
    if (id == "curvature/cartan-m4") return isoparametric_cubic(4);
    if (id == "curvature/cartan-m8") return isoparametric_cubic(8);
    throw std::logic_error("unknown flat pin");
  };
  for (const auto& [id, zero] : std::vector<std::pair<std::string, bool>>{
           {"curvature/chain-n3", true},
           {"curvature/chain-n5", true},
           {"curvature/r4-complex", false},
           {"curvature/cartan-m1", false},
           {"curvature/cartan-m2", false},
           {"curvature/cartan-m4", false},
           {"curvature/cartan-m8", false}}) {
    add(id, {"curvature"}, [id, zero, flat_cubic](const CheckContext& c) {
      return flat_curvature_entry(id, flat_cubic(id), zero, c);
    });
  }
  add("curvature/nahm-so3", {"curvature", "nahm"}, [](const CheckContext& c) {
    LieAlgebraData so3(3, {{0, 1, 2, Scalar(1)}, {1, 2, 0, Scalar(1)}, {2, 0, 1, Scalar(1)}});
    return flat_curvature_entry("curvature/nahm-so3", nahm(so3).cubic(), false, c);
  });

  // Left-invariant structures.
  add("lie/killing-metrics", {"lie"}, [](const CheckContext& c) {
    Certificate cert{"lie/killing-metrics", c.float_mode, c.tol};
    Metric so3 = killing_metric(builtin_lie("so3"));
    cert.checks.push_back(c.bool_check("so3-orthonormal", so3.is_euclidean()));
    Metric sl2 = killing_metric(builtin_lie("sl2r"));
    cert.checks.push_back(c.scalar_check("sl2r-xx", sl2.g[0][0], Scalar(-1)));
    cert.checks.push_back(c.scalar_check("sl2r-zz", sl2.g[2][2], Scalar(1)));
    return cert;
  });
  for (const auto& [tag, tval] : std::vector<std::pair<std::string, Scalar>>{
           {"t0", Scalar(0)},
           {"t1", Scalar(1)},
           {"t-critical", Scalar::root(Rat(3, 2), 2)},
           {"t3", Scalar(3)}}) {
    std::string id = "lie/s3-" + tag;
    add(id, {"lie"}, [id, tval](const CheckContext& c) {
      Certificate cert = certify_invariant(s3_family(tval), id, c);
      InvariantReport rep = invariant_curvature(s3_family(tval));
      cert.checks.push_back(c.scalar_check("scalar = 3/4 - t^2/6", rep.scalar,
                                           Scalar(Rat(3, 4)) - tval * tval / Scalar(6)));
      cert.checks.push_back(c.scalar_check(
          "|E|^2 = 2t^2/3",
          full_contract(rep.dec.E4, rep.dec.E4, killing_metric(builtin_lie("so3"))),
          Scalar(2) * tval * tval / Scalar(3)));
      cert.checks.push_back(c.scalar_check("E-component = -t sqrt(2)/6",
                                           rep.dec.E4.get(0, 1, 0, 1),
                                           -tval * Scalar::root(Rat(1, 6), 2)));
      return cert;
    });
  }
  add("lie/sl2-nilpotent", {"lie"}, [](const CheckContext& c) {
    Certificate cert{"lie/sl2-nilpotent", c.float_mode, c.tol};
    LieAlgebraData lie = builtin_lie("sl2-standard");
    NilpotentStructure ns = nilpotent_structure(lie, basis(3, 0), basis(3, 1), basis(3, 2));
    InvariantReport rep = invariant_curvature(ns.s);
    cert.checks.push_back(c.bool_check("einstein", rep.einstein.has_value()));
    if (rep.einstein)
      cert.checks.push_back(
          c.scalar_check("einstein-constant = 1/4", *rep.einstein, Scalar(Rat(1, 4))));
    cert.checks.push_back(c.scalar_check("scalar = 3/4", rep.scalar, Scalar(Rat(3, 4))));
    bool ric_ok = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (Scalar(4) * rep.ric[i][j] != ns.s.h.g[i][j]) ric_ok = false;
    cert.checks.push_back(c.bool_check("4R_ij = h_ij", ric_ok));
    Scalar contraction = nilpotent_contraction(ns, rep);
    cert.checks.push_back(c.scalar_check("contraction = -4 B(e,f)^3", contraction,
                                         Scalar(-4) * ns.bef * ns.bef * ns.bef));
    cert.checks.push_back(c.bool_check("contraction-nonzero", !contraction.is_zero()));
    return cert;
  });

  // Polynomial torsion field that is naive Einstein but not Einstein.
  add("field/naive-divergence-free", {"naive"}, [](const CheckContext& c) {
    Certificate cert{"field/naive-divergence-free", c.float_mode, c.tol};
    const int n = 3;
    Metric h = Metric::euclidean(n);
    Polynomial x1 = Polynomial::variable(n, 0), x3 = Polynomial::variable(n, 2);
    Polynomial f = x1 + x3, g = Scalar(2) * (x1 - x3);
    PolyTensorField L(n, 3);
    L.add({0, 0, 1}, Scalar(2) * f);
    L.add({1, 2, 2}, Scalar(-2) * f);
    L.add({0, 1, 2}, g);
    FieldCurvatureReport rep = field_curvature_flat(L, h);
    cert.checks.push_back(c.bool_check("divergence-free", rep.div.is_zero()));
    cert.checks.push_back(c.bool_check("naive-einstein", rep.Eij.is_zero()));
    Polynomial expect = Scalar(Rat(-1, 4)) * (Scalar(24) * (f * f) + Scalar(6) * (g * g));
    cert.checks.push_back(c.bool_check("-4 scalar = 24f^2 + 6g^2", rep.scalar == expect));
    cert.checks.push_back(
        c.bool_check("scalar = -12(x1^2+x3^2)", rep.scalar == Scalar(-12) * (x1 * x1 + x3 * x3)));
    cert.checks.push_back(c.bool_check("scalar-nonconstant", rep.scalar.degree() == 2));
    return cert;
  });

  // Orthant jets (float).
  for (int n : {3, 4}) {
    std::string id = "jet/orthant-n" + std::to_string(n);
    add(id, {"jet"}, [id, n](const CheckContext& c) {
      Certificate cert{id, true, c.tol};
      Json input;
      input["orthant"]["n"] = n;
      input["orthant"]["step"] = 1e-4;
      JetCurvatureReport rep = curvature_from_jet(jet_from_json(input));
      cert.checks.push_back(c.float_check("|L|^2 = 4n(n-1)", rep.L_norm2, 4.0 * n * (n - 1), 1e-6));
      cert.checks.push_back(c.float_check("scalar = n(1-n)", rep.scalar, n * (1.0 - n), 1e-6));
      cert.checks.push_back(c.float_check("metric-flat", rep.metric_scalar, 0.0, 1e-6));
      cert.checks.push_back(c.float_check("consistency", rep.consistency, 0.0, 1e-6));
      return cert;
    });
  }

  // Kato spot checks (float).
  for (const auto& [tag, kind] : std::vector<std::pair<std::string, KatoKernel>>{
           {"k-div", KatoKernel::k_div}, {"l-div", KatoKernel::l_div}, {"l-k", KatoKernel::l_k}}) {
    std::string id = "kato/" + tag;
    KatoKernel kk = kind;
    add(id, {"kato"}, [id, kk](const CheckContext& c) {
      Certificate cert{id, true, c.tol};
      const int n = 3;
      const int k = kk == KatoKernel::k_div ? 2 : 1;
      Metric h = Metric::euclidean(n);
      std::mt19937 rng(7);
      std::uniform_real_distribution<double> d(-1.5, 1.5);
      double worst = 0.0;
      for (unsigned seed = 1; seed <= 3; ++seed) {
        PolyTensorField w = kernel_field(kk, n, k, h, seed);
        std::vector<std::vector<double>> pts(5, std::vector<double>(n));
        for (auto& p : pts)
          for (double& x : p) x = d(rng);
        KatoCheck kc = kato_spot_check(w, kk, pts, h);
        for (double s : kc.slack) worst = std::min(worst, s);
      }
      cert.checks.push_back(c.float_check("min-slack >= 0", std::min(worst, 0.0), 0.0, 1e-12));
      return cert;
    });
  }

  std::sort(es.begin(), es.end(), [](const Entry& a, const Entry& b) { return a.id < b.id; });
  return es;
}

const std::vector<Entry>& all_entries() {
  static const std::vector<Entry> es = build_entries();
  return es;
}

}  // namespace

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  for (const auto& e : all_entries()) out.push_back({e.id, e.tags});
  return out;
}

std::vector<Certificate> run_catalog(const CatalogOptions& opts) {
  const auto& es = all_entries();
  std::vector<int> picked;
  for (int i = 0; i < (int)es.size(); ++i) {
    if (opts.only_tag.empty() ||
        std::find(es[i].tags.begin(), es[i].tags.end(), opts.only_tag) != es[i].tags.end())
      picked.push_back(i);
  }
  CheckContext ctx{opts.float_mode, opts.tol};

  int threads = opts.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("AH_LAB_THREADS")) threads = std::atoi(env);
    if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
    if (threads <= 0) threads = 1;
  }
  threads = std::min<int>(threads, (int)picked.size());

  std::vector<Certificate> results(picked.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= picked.size()) return;
      const Entry& e = es[picked[i]];
      auto t0 = std::chrono::steady_clock::now();
      results[i] = e.fn(ctx);
      results[i].elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;  // already ordered: picked preserves the sorted entry order
}

}  // namespace ahlab
