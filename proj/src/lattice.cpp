#include "fano/lattice.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace fano {

IntLattice::IntLattice(MatZ gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
  if (!gram_.is_symmetric()) throw std::invalid_argument("Gram matrix not symmetric");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    if (gram_(i, i) % 2 != 0) throw std::invalid_argument("Gram diagonal not even");
  if (!labels_.empty() && labels_.size() != gram_.rows())
    throw std::invalid_argument("label count != rank");
}

Int IntLattice::det() const { return fano::det(gram_); }

Inertia IntLattice::inertia_indices() const { return inertia(gram_); }

Inertia inertia_indices(const IntLattice& L) { return L.inertia_indices(); }

VecQ Sublattice::coords_of(const VecQ& ambient) const {
  // solve x * basis = ambient
  MatQ bt = basis.transposed();
  VecQ x;
  if (!solve(bt, ambient, x)) throw std::domain_error("vector not in sublattice span");
  return x;
}

Int DiscriminantGroup::order() const {
  Int o = 1;
  for (const auto& d : orders_) o *= d;
  return o;
}

VecQ DiscriminantGroup::lift(const DiscElement& e) const {
  VecQ v(lifts_.cols());
  for (std::size_t i = 0; i < orders_.size(); ++i)
    for (std::size_t j = 0; j < lifts_.cols(); ++j)
      v[j] += Rat(e.residues[i]) * lifts_(i, j);
  return v;
}

DiscElement DiscriminantGroup::reduce(const VecQ& dual_vec) const {
  // Solve  dual_vec = r * lifts + z  with r in Z^k, z in Z^n, via SNF of the
  // stacked integral matrix after clearing denominators; the class is r mod
  // the cyclic orders. Throws when dual_vec is not in L^dual.
  std::size_t n = lifts_.cols();
  std::size_t k = orders_.size();
  Int den = 1;
  auto lcm_in = [&](const Rat& q) {
    Int d = q.get_den();
    den = den / gcd(den, d) * d;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) lcm_in(lifts_(i, j));
  for (std::size_t j = 0; j < n; ++j) lcm_in(dual_vec[j]);
  // integer matrix rows: den*lift_i, den*e_j ; target den*v
  MatZ rows(k + n, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat s = lifts_(i, j) * Rat(den);
      rows(i, j) = s.get_num();
    }
  for (std::size_t j = 0; j < n; ++j) rows(k + j, j) = den;
  VecZ target(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat s = dual_vec[j] * Rat(den);
    target[j] = s.get_num();
  }
  // Solve y * rows = target over Z via column-HNF elimination with transform.
  // Build M = rows^T (n x (k+n)), solve M x = target with x integral.
  // Use SNF: U M V = D -> x = V * s, s_i = (U target)_i / d_i.
  MatZ m(n, k + n);
  for (std::size_t i = 0; i < k + n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(j, i) = rows(i, j);
  SmithForm sf = smith(m);
  VecZ ut = mul(sf.u, target);
  std::size_t dr = std::min(sf.d.rows(), sf.d.cols());
  VecZ s(k + n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    Int di = i < dr ? sf.d(i, i) : Int(0);
    if (di == 0) {
      if (ut[i] != 0) throw std::domain_error("reduce: vector not in dual span");
      continue;
    }
    if (ut[i] % di != 0) throw std::domain_error("reduce: vector not in dual group");
    if (i < k + n) s[i] = ut[i] / di;
  }
  VecZ x = mul(sf.v, s);
  DiscElement e;
  e.residues.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    Int r = x[i] % orders_[i];
    if (r < 0) r += orders_[i];
    e.residues[i] = r;
  }
  return e;
}

bool DiscriminantGroup::is_zero(const DiscElement& e) const {
  for (std::size_t i = 0; i < orders_.size(); ++i)
    if (e.residues[i] % orders_[i] != 0) return false;
  return true;
}

static Rat mod_2z(Rat q) {
  // reduce to [0, 2)
  Rat half = q / 2;
  Int k;
  mpz_fdiv_q(k.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
  q -= Rat(k) * 2;
  return q;
}

static Rat mod_z(Rat q) {
  Int k;
  mpz_fdiv_q(k.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  q -= Rat(k);
  return q;
}

Rat DiscriminantGroup::qform(const DiscElement& e) const {
  VecQ v = lift(e);
  return mod_2z(bilinear(to_rational(gram_), v, v));
}

Rat DiscriminantGroup::bform(const DiscElement& a, const DiscElement& b) const {
  VecQ x = lift(a), y = lift(b);
  return mod_z(bilinear(to_rational(gram_), x, y));
}

DiscElement DiscriminantGroup::add(const DiscElement& a, const DiscElement& b) const {
  DiscElement e;
  e.residues.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    Int r = (a.residues[i] + b.residues[i]) % orders_[i];
    e.residues[i] = r;
  }
  return e;
}

DiscElement DiscriminantGroup::neg(const DiscElement& a) const {
  DiscElement e;
  e.residues.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    Int r = (orders_[i] - a.residues[i]) % orders_[i];
    e.residues[i] = r;
  }
  return e;
}

DiscElement DiscriminantGroup::smul(const Int& k, const DiscElement& a) const {
  DiscElement e;
  e.residues.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    Int r = (k * a.residues[i]) % orders_[i];
    if (r < 0) r += orders_[i];
    e.residues[i] = r;
  }
  return e;
}

Int DiscriminantGroup::element_order(const DiscElement& a) const {
  Int o = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    Int d = orders_[i] / gcd(a.residues[i], orders_[i]);
    o = o / gcd(o, d) * d;
  }
  return o;
}

std::vector<DiscElement> DiscriminantGroup::all_elements() const {
  Int o = order();
  if (o > 2 * 1000 * 1000) throw std::domain_error("discriminant group too large to enumerate");
  std::size_t total = static_cast<std::size_t>(o.get_ui());
  std::vector<DiscElement> out;
  out.reserve(total);
  DiscElement cur;
  cur.residues.assign(orders_.size(), Int(0));
  for (std::size_t c = 0; c < total; ++c) {
    out.push_back(cur);
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      cur.residues[i] += 1;
      if (cur.residues[i] < orders_[i]) break;
      cur.residues[i] = 0;
    }
  }
  return out;
}

DiscriminantGroup discriminant(const IntLattice& L) {
  if (L.det() == 0) throw DegenerateLattice();
  DiscriminantGroup g;
  g.gram_ = L.gram();
  g.gram_inv_ = inverse(to_rational(L.gram()));
  // coker(G) with U G V = D: generators U^{-1} e_i of order d_i (d_i > 1);
  // lift in L(x)Q coordinates: G^{-1} U^{-1} e_i = column i of G^{-1} U^{-1}.
  SmithForm sf = smith(L.gram());
  MatQ uinv = inverse(to_rational(sf.u));
  MatQ lifts_all = mul(g.gram_inv_, uinv);
  std::size_t n = L.rank();
  for (std::size_t i = 0; i < n; ++i) {
    Int d = sf.d(i, i);
    if (d == 1) continue;
    g.orders_.push_back(d);
  }
  MatQ lifts(g.orders_.size(), n);
  std::size_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sf.d(i, i) == 1) continue;
    for (std::size_t j = 0; j < n; ++j) lifts(r, j) = lifts_all(j, i);
    ++r;
  }
  g.lifts_ = lifts;
  return g;
}

Int kernel_order(const IntLattice& L, const Kernel& K) {
  if (K.is_trivial()) return 1;
  DiscriminantGroup d = discriminant(L);
  // subgroup closure via BFS over generator sums
  std::vector<DiscElement> gens;
  for (std::size_t i = 0; i < K.generators.rows(); ++i)
    gens.push_back(d.reduce(K.generators.row(i)));
  auto key = [&](const DiscElement& e) {
    std::string s;
    for (const auto& r : e.residues) s += r.get_str() + ",";
    return s;
  };
  std::vector<DiscElement> elems;
  std::vector<std::string> seen;
  DiscElement zero;
  zero.residues.assign(d.cyclic_orders().size(), Int(0));
  elems.push_back(zero);
  seen.push_back(key(zero));
  std::sort(seen.begin(), seen.end());
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : gens) {
      DiscElement e = d.add(elems[head], gen);
      std::string k = key(e);
      auto it = std::lower_bound(seen.begin(), seen.end(), k);
      if (it != seen.end() && *it == k) continue;
      seen.insert(it, k);
      elems.push_back(e);
    }
  }
  return Int(static_cast<unsigned long>(elems.size()));
}

Extension extend_by_kernel(const IntLattice& L, const Kernel& K) {
  std::size_t n = L.rank();
  DiscriminantGroup d = discriminant(L);
  MatQ gq = to_rational(L.gram());
  for (std::size_t i = 0; i < K.generators.rows(); ++i) {
    VecQ v = K.generators.row(i);
    DiscElement e = d.reduce(v);  // also validates membership in the dual
    if (d.qform(e) != 0) throw NotIsotropic();
  }
  // rows: identity basis + generators
  MatQ rows(n + K.generators.rows(), n);
  for (std::size_t j = 0; j < n; ++j) rows(j, j) = 1;
  for (std::size_t i = 0; i < K.generators.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) rows(n + i, j) = K.generators(i, j);
  MatQ basis = row_lattice_basis(rows);
  if (basis.rows() != n) throw std::logic_error("extension rank changed");
  // new Gram
  MatQ gram_q = mul(mul(basis, gq), basis.transposed());
  MatZ gram_z = to_integral(gram_q);
  Extension ext;
  ext.lattice = IntLattice(gram_z);
  ext.new_in_old = basis;
  // e_i = x * basis  =>  x = row i of basis^{-1}
  ext.old_in_new = inverse(basis);
  return ext;
}

Sublattice primitive_hull(const IntLattice& L, const std::vector<VecZ>& generators) {
  std::size_t n = L.rank();
  MatZ m(generators.size(), n);
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = generators[i][j];
  MatZ sat = saturate_rows(m);
  Sublattice s;
  s.basis = to_rational(sat);
  MatQ gram_q = mul(mul(s.basis, to_rational(L.gram())), s.basis.transposed());
  s.lattice = IntLattice(to_integral(gram_q));
  return s;
}

Sublattice orthogonal_complement(const IntLattice& L, const std::vector<VecQ>& generators) {
  std::size_t n = L.rank();
  // pairing matrix: rows = gram * g (as linear functionals on Z^n)
  MatQ p(generators.size(), n);
  MatQ gq = to_rational(L.gram());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    VecQ f = mul(gq, generators[i]);
    for (std::size_t j = 0; j < n; ++j) p(i, j) = f[j];
  }
  MatQ ker = nullspace(p);  // x with p x = 0 (columns) -- but we need rows x
  // nullspace returns rows spanning {x : p x = 0}; these are the complement.
  MatZ kz(ker.rows(), n);
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    VecZ prim = primitive_part(ker.row(i));
    for (std::size_t j = 0; j < n; ++j) kz(i, j) = prim[j];
  }
  MatZ sat = saturate_rows(kz);
  Sublattice s;
  s.basis = to_rational(sat);
  MatQ gram_q = mul(mul(s.basis, gq), s.basis.transposed());
  s.lattice = IntLattice(to_integral(gram_q));
  return s;
}

RadicalQuotient quotient_by_radical(const IntLattice& L) {
  RadicalQuotient rq;
  MatQ gq = to_rational(L.gram());
  MatQ ker = nullspace(gq);
  rq.radical_rank = ker.rows();
  if (ker.rows() == 0) {
    rq.lattice = L;
    rq.projection = MatQ::identity(L.rank());
    return rq;
  }
  std::size_t n = L.rank();
  MatZ kz(ker.rows(), n);
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    VecZ prim = primitive_part(ker.row(i));
    for (std::size_t j = 0; j < n; ++j) kz(i, j) = prim[j];
  }
  // complete the saturated radical to a basis of Z^n via SNF: U R V = D;
  // quotient basis = images of the last n-r columns of (V^T)^{-1}... use the
  // standard trick: rows of R saturated; pick complement columns from V of
  // smith(R): Z^n / R Z^n free part generated by columns of V index >= r... we
  // need a projection pi: Z^n -> Z^{n-r} with kernel exactly R.
  MatZ r_sat = saturate_rows(kz);  // the radical, saturated
  std::size_t r = r_sat.rows();
  SmithForm sf = smith(r_sat);  // u * r_sat * v = d (r x n), all d_i = 1
  // radical = span of the first r rows of v^{-1}; a row vector x projects to
  // the last n-r coordinates of x*v, so pi(i,j) = v(j, r+i). The section
  // s(e_i) = row (r+i) of v^{-1} satisfies pi . s = id.
  MatQ vinv = inverse(to_rational(sf.v));
  MatQ proj(n - r, n);
  for (std::size_t i = 0; i < n - r; ++i)
    for (std::size_t j = 0; j < n; ++j) proj(i, j) = Rat(sf.v(j, r + i));
  MatQ section(n - r, n);
  for (std::size_t i = 0; i < n - r; ++i)
    for (std::size_t j = 0; j < n; ++j) section(i, j) = vinv(r + i, j);
  MatQ gram_q = mul(mul(section, gq), section.transposed());
  rq.lattice = IntLattice(to_integral(gram_q));
  rq.projection = proj;
  return rq;
}

// ---------------- serialization ----------------

std::string write_lattice(const IntLattice& L, const VecZ* h) {
  std::ostringstream os;
  os << "lattice v1\n";
  os << "rank " << L.rank() << "\n";
  os << "gram\n";
  for (std::size_t i = 0; i < L.rank(); ++i) {
    for (std::size_t j = 0; j < L.rank(); ++j) {
      if (j) os << ' ';
      os << L.gram()(i, j);
    }
    os << '\n';
  }
  if (!L.labels().empty()) {
    os << "labels";
    for (const auto& s : L.labels()) os << ' ' << s;
    os << '\n';
  }
  if (h) {
    // prefer an index when h is a basis vector
    std::size_t idx = L.rank();
    std::size_t nonzero = 0, pos = 0;
    for (std::size_t j = 0; j < h->size(); ++j)
      if ((*h)[j] != 0) {
        ++nonzero;
        pos = j;
      }
    if (nonzero == 1 && (*h)[pos] == 1) idx = pos;
    if (idx < L.rank()) {
      os << "hindex " << idx << '\n';
    } else {
      os << "h";
      for (const auto& c : *h) os << ' ' << c;
      os << '\n';
    }
  }
  os << "end\n";
  return os.str();
}

static std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') continue;
    return line.substr(i);
  }
  throw std::runtime_error("lattice parse: unexpected end of input");
}

IntLattice read_lattice(std::istream& in, std::optional<VecZ>* h_out) {
  std::string line = next_content_line(in);
  if (line.rfind("lattice", 0) != 0) throw std::runtime_error("lattice parse: bad header");
  line = next_content_line(in);
  std::istringstream ls(line);
  std::string kw;
  std::size_t n;
  ls >> kw >> n;
  if (kw != "rank") throw std::runtime_error("lattice parse: expected rank");
  line = next_content_line(in);
  if (line.rfind("gram", 0) != 0) throw std::runtime_error("lattice parse: expected gram");
  MatZ g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    line = next_content_line(in);
    std::istringstream rs(line);
    for (std::size_t j = 0; j < n; ++j) {
      std::string tok;
      if (!(rs >> tok)) throw std::runtime_error("lattice parse: short gram row " + std::to_string(i));
      g(i, j) = Int(tok);
    }
  }
  std::vector<std::string> labels;
  std::optional<VecZ> h;
  for (;;) {
    line = next_content_line(in);
    if (line.rfind("end", 0) == 0) break;
    std::istringstream fs(line);
    fs >> kw;
    if (kw == "labels") {
      std::string s;
      while (fs >> s) labels.push_back(s);
    } else if (kw == "hindex") {
      std::size_t idx;
      fs >> idx;
      VecZ hv(n, Int(0));
      hv[idx] = 1;
      h = hv;
    } else if (kw == "h") {
      VecZ hv(n);
      for (std::size_t j = 0; j < n; ++j) {
        std::string tok;
        if (!(fs >> tok)) throw std::runtime_error("lattice parse: short h vector");
        hv[j] = Int(tok);
      }
      h = hv;
    } else {
      throw std::runtime_error("lattice parse: unknown field " + kw);
    }
  }
  if (h_out) *h_out = h;
  // validate evenness with row index in the message, as parse-level feedback
  for (std::size_t i = 0; i < n; ++i)
    if (g(i, i) % 2 != 0)
      throw std::runtime_error("lattice parse: odd diagonal at row " + std::to_string(i));
  return IntLattice(g, labels);
}

IntLattice read_lattice_string(const std::string& s, std::optional<VecZ>* h_out) {
  std::istringstream is(s);
  return read_lattice(is, h_out);
}

PolarizedLattice PolarizedLattice::checked(IntLattice L, VecZ h) {
  PolarizedLattice s{std::move(L), std::move(h)};
  Int d = s.lattice.norm(s.h);
  if (d <= 0 || d % 2 != 0) throw std::domain_error("polarization must have positive even square");
  Inertia in = s.lattice.inertia_indices();
  if (in.pos != 1 || in.zero != 0) throw NotHyperbolic();
  return s;
}

std::string write_polarized(const PolarizedLattice& S) {
  return write_lattice(S.lattice, &S.h);
}

PolarizedLattice read_polarized(std::istream& in) {
  std::optional<VecZ> h;
  IntLattice L = read_lattice(in, &h);
  if (!h) throw std::runtime_error("lattice parse: missing polarization h");
  return PolarizedLattice::checked(std::move(L), std::move(*h));
}

PolarizedLattice read_polarized_string(const std::string& s) {
  std::istringstream is(s);
  return read_polarized(is);
}

}  // namespace fano
