#include "quatlas/classifier.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace quatlas {

// ---------------------------------------------------------------- TypeTriple

TypeTriple TypeTriple::canonical() const {
  TypeTriple t = *this;
  std::sort(t.m.begin(), t.m.end());
  return t;
}

bool TypeTriple::subset_of(const TypeTriple& o) const {
  for (int k = 0; k < 3; ++k)
    if (m[k] & ~o.m[k]) return false;
  return true;
}

std::string TypeTriple::hex() const {
  static const char* digits = "0123456789ABCDEF";
  std::string s;
  for (auto v : m) s += digits[v & 0xF];
  return s;
}

TypeTriple TypeTriple::parse(const std::string& hex) {
  if (hex.size() != 3) throw std::invalid_argument("type triple must have three hex digits: " + hex);
  TypeTriple t;
  for (int k = 0; k < 3; ++k) {
    char c = hex[k];
    int v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else
      throw std::invalid_argument("bad hex digit in type triple: " + hex);
    t.m[k] = std::uint8_t(v);
  }
  return t;
}

TypeTriple permute(const TypeTriple& t, const std::array<int, 3>& perm) {
  return TypeTriple(t.m[perm[0]], t.m[perm[1]], t.m[perm[2]]);
}

// -------------------------------------------------------------------- Engine

namespace {

std::array<GHProjectorSet, 3> make_projectors(const QuatFrame& f) {
  return {GHProjectorSet(f, Structure::I), GHProjectorSet(f, Structure::J),
          GHProjectorSet(f, Structure::K)};
}

// d* as a matrix on flattened order-3 tensors.
Eigen::MatrixXd coderivative_matrix(int N) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(N, Eigen::Index(N) * N * N);
  for (int x = 0; x < N; ++x)
    for (int i = 0; i < N; ++i) c(x, (Eigen::Index(i) * N + i) * N + x) = -1.0;
  return c;
}

}  // namespace

Engine::Engine(int n, double tol)
    : tol_(tol), frame_(n), ps_(frame_), gh_(make_projectors(frame_)) {
  if (!(tol > 0.0 && tol < 1e-2)) throw std::invalid_argument("tolerance must lie in (0, 1e-2)");
  if (n >= 2) iso_ = alpha_isotypic(ps_);

  const int dp = ps_.dim();
  const int D = frame_.dim() * frame_.dim() * frame_.dim();
  for (auto& r : recon_) r.resize(D, dp);
  for (int col = 0; col < dp; ++col) {
    TorsionTriple t = reconstruct(frame_, ps_.from_vector(Eigen::VectorXd::Unit(dp, col)));
    for (Structure a : kStructures) recon_[index_of(a)].col(col) = t[a].vec();
  }

  // adapted blocks: lambdas are E-type; alpha coordinates split by module
  const int N = frame_.dim();
  auto alpha_block = [&](const std::string& lab, const Eigen::MatrixXd* vb, bool with_lambda) {
    const int per = vb ? int(vb->cols()) : 0;
    const int width = (with_lambda ? 3 * N : 0) + 3 * per;
    Block b{lab, Eigen::MatrixXd::Zero(dp, width)};
    int c = 0;
    if (with_lambda)
      for (int k = 0; k < 3 * N; ++k) b.basis(k, c++) = 1.0;
    for (Structure a : kStructures)
      for (int k = 0; k < per; ++k) {
        b.basis.col(c).segment(ps_.alpha_offset(a), ps_.alpha_dim()) = vb->col(k);
        ++c;
      }
    return b;
  };
  if (n == 1) {
    blocks_.push_back(alpha_block(kEMod, nullptr, true));
  } else {
    blocks_.push_back(alpha_block(kEMod, &iso_.find(kEMod)->basis, true));
    blocks_.push_back(alpha_block(kKMod, &iso_.find(kKMod)->basis, false));
    if (const auto* l3 = iso_.find(kLambda3)) blocks_.push_back(alpha_block(kLambda3, &l3->basis, false));
  }
  build_components();
}

Eigen::MatrixXd Engine::gh_component_map(Structure a, int i) const {
  const GHProjectorSet& p = gh_[index_of(a)];
  return p.matrix(i) * (p.space().columns.transpose() * recon_[index_of(a)]);
}

Eigen::MatrixXd Engine::quat_component_map(bool s3h, int module_bit) const {
  const int dp = ps_.dim();
  const int D = int(recon_[0].rows());
  const char* lab = module_bit == 4 ? kLambda3 : module_bit == 2 ? kKMod : kEMod;
  const IsotypicComponent* c = iso_.find(lab);
  if (!has_quat() || !c) return Eigen::MatrixXd::Zero(s3h ? 2 * D : D, dp);
  const Eigen::MatrixXd proj = c->projector();  // alpha coords
  std::array<Eigen::MatrixXd, 3> sa;  // A_(1) alpha_A^V as a map of all parameters
  for (Structure a : kStructures) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(D, dp);
    const Eigen::MatrixXd& ab = ps_.alpha_basis().columns;
    Eigen::MatrixXd acted(D, ab.cols());
    for (int k = 0; k < ab.cols(); ++k)
      acted.col(k) = slot_act(frame_, a, 0, Tensor::from_coefficients(frame_.dim(), 3, ab.col(k))).vec();
    m.middleCols(ps_.alpha_offset(a), ps_.alpha_dim()) = acted * proj;
    sa[index_of(a)] = std::move(m);
  }
  if (!s3h) return sa[0] + sa[1] + sa[2];
  Eigen::MatrixXd out(2 * D, dp);
  out.topRows(D) = sa[0] - sa[1];
  out.bottomRows(D) = sa[1] - sa[2];
  return out;
}

Eigen::MatrixXd Engine::lee_form_map(Structure a) const {
  const int N = frame_.dim();
  // theta = A d* w / (2n-1), with (A eta) = -A^T eta
  Eigen::MatrixXd cd = coderivative_matrix(N) * recon_[index_of(a)];
  return -(frame_.matrix(a).transpose() * cd) / (2.0 * frame_.n() - 1.0);
}

Eigen::MatrixXd Engine::lee_difference_map() const {
  const int N = frame_.dim();
  Eigen::MatrixXd out(2 * N, ps_.dim());
  Eigen::MatrixXd ti = lee_form_map(Structure::I), tj = lee_form_map(Structure::J),
                  tk = lee_form_map(Structure::K);
  out.topRows(N) = ti - tj;
  out.bottomRows(N) = tj - tk;
  return out;
}

Engine::Component Engine::make_component(const std::string& name, const Eigen::MatrixXd& map) {
  Component c;
  c.name = name;
  Eigen::MatrixXd g = map.transpose() * map;
  c.scale = std::max(lambda_max(g), 0.0);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    c.gram.push_back(blocks_[b].basis.transpose() * g * blocks_[b].basis);
    if (c.scale > 0)
      for (std::size_t o = b + 1; o < blocks_.size(); ++o) {
        Eigen::MatrixXd off = blocks_[b].basis.transpose() * g * blocks_[o].basis;
        if (off.size()) block_leak_ = std::max(block_leak_, off.cwiseAbs().maxCoeff() / c.scale);
      }
  }
  return c;
}

void Engine::build_components() {
  for (Structure a : kStructures)
    for (int i = 1; i <= 4; ++i) {
      std::ostringstream os;
      os << "W" << i << "(" << label(a) << ")";
      gh_comp_.push_back(make_component(os.str(), gh_component_map(a, i)));
      kernel_scale_ = std::max(kernel_scale_, gh_comp_.back().scale);
    }
  if (has_quat()) {
    for (bool s : {true, false})
      for (int bit : {4, 2, 1}) {
        std::ostringstream os;
        os << (s ? "S3H" : "H") << "/" << bit;
        quat_comp_.push_back(make_component(os.str(), quat_component_map(s, bit)));
      }
  }
  lee_comp_ = make_component("lee-difference", lee_difference_map());
  if (block_leak_ > 1e-9) {
    std::ostringstream os;
    os << "component Grams are not block diagonal in the isotypic basis (leak " << block_leak_ << ")";
    throw ConventionError(os.str());
  }
}

std::vector<Eigen::MatrixXd> Engine::block_kernel(const TypeTriple& t) const {
  std::vector<Eigen::MatrixXd> q;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const int w = int(blocks_[b].basis.cols());
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(w, w);
    bool any = false;
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 4; ++i)
        if (!((t.m[a] >> i) & 1)) {
          f += gh_comp_[4 * a + i].gram[b];
          any = true;
        }
    if (!any || w == 0) {
      q.push_back(Eigen::MatrixXd::Identity(w, w));
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f);
    const auto& ev = es.eigenvalues();
    const double cut = tol_ * kernel_scale_;
    int k = 0;
    while (k < w && ev(k) <= cut) ++k;
    if (k > 0) margins_.kernel_zero_max = std::max(margins_.kernel_zero_max, ev(k - 1) / kernel_scale_);
    if (k < w) margins_.kernel_nonzero_min = std::min(margins_.kernel_nonzero_min, ev(k) / kernel_scale_);
    q.push_back(es.eigenvectors().leftCols(k));
  }
  return q;
}

bool Engine::present(const Component& c, const std::vector<Eigen::MatrixXd>& q) const {
  if (c.scale <= 0) return false;
  const double cut = tol_ * c.scale;
  double best_lower = 0.0, total = 0.0;
  std::vector<std::pair<const Eigen::MatrixXd*, const Eigen::MatrixXd*>> todo;
  for (std::size_t b = 0; b < q.size(); ++b) {
    const Eigen::MatrixXd& qb = q[b];
    if (qb.cols() == 0) continue;
    Eigen::MatrixXd y = c.gram[b] * qb;
    const double tr = (qb.array() * y.array()).sum();
    total += std::max(tr, 0.0);
    best_lower = std::max(best_lower, tr / double(qb.cols()));
    todo.emplace_back(&c.gram[b], &qb);
  }
  bool result;
  double value;
  if (total <= cut) {
    result = false;
    value = total;
  } else if (best_lower > cut) {
    result = true;
    value = best_lower;
  } else {
    value = 0.0;
    for (auto [g, qb] : todo) value = std::max(value, lambda_max(qb->transpose() * *g * *qb));
    result = value > cut;
  }
  if (result)
    margins_.presence_nonzero_min = std::min(margins_.presence_nonzero_min, value / c.scale);
  else
    margins_.presence_zero_max = std::max(margins_.presence_zero_max, value / c.scale);
  return result;
}

SubspaceBasis Engine::constraint_subspace(const TypeTriple& t) const {
  std::vector<Eigen::MatrixXd> q = block_kernel(t);
  int d = 0;
  for (const auto& qb : q) d += int(qb.cols());
  SubspaceBasis s;
  s.tolerance = tol_;
  s.columns.resize(ps_.dim(), d);
  int c = 0;
  for (std::size_t b = 0; b < q.size(); ++b) {
    s.columns.middleCols(c, q[b].cols()) = blocks_[b].basis * q[b];
    c += int(q[b].cols());
  }
  return s;
}

ReductionResult Engine::generic_reduction(const TypeTriple& t) const {
  for (auto v : t.m)
    if (v > 0xF) throw std::invalid_argument("masks must be 4-bit");
  std::vector<Eigen::MatrixXd> q = block_kernel(t);
  ReductionResult r;
  r.input = t;
  r.n = n();
  for (const auto& qb : q) r.subspace_dim += int(qb.cols());
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 4; ++i)
      if (((t.m[a] >> i) & 1) && present(gh_comp_[4 * a + i], q)) r.reduced.m[a] |= std::uint8_t(1u << i);
  if (has_quat()) {
    QuatType qt;
    for (int k = 0; k < 3; ++k) {
      const int bit = 4 >> k;
      if (present(quat_comp_[k], q)) qt.s3h |= std::uint8_t(bit);
      if (present(quat_comp_[3 + k], q)) qt.h |= std::uint8_t(bit);
    }
    r.quat = qt;
  }
  r.common_lee = !present(lee_comp_, q);
  return r;
}

bool Engine::vanishes_on(const Eigen::MatrixXd& map, const SubspaceBasis& q) const {
  if (q.dim() == 0 || map.size() == 0) return true;
  const double top = singular_values(map)(0);
  if (top == 0.0) return true;
  const double s = singular_values(map * q.columns)(0);
  return s * s <= tol_ * top * top;
}

ReductionResult Engine::reduce_subspace(const SubspaceBasis& q, const TypeTriple& input) const {
  // project the subspace onto the adapted blocks; only valid for
  // block-compatible subspaces, which constraint subspaces always are
  std::vector<Eigen::MatrixXd> qb;
  for (const auto& b : blocks_) qb.push_back(orthonormal_span(b.basis.transpose() * q.columns, 1e-10));
  int total = 0;
  for (const auto& m : qb) total += int(m.cols());
  if (total != q.dim())
    throw std::invalid_argument("subspace is not compatible with the isotypic block structure");
  ReductionResult r;
  r.input = input;
  r.n = n();
  r.subspace_dim = q.dim();
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 4; ++i)
      if (present(gh_comp_[4 * a + i], qb)) r.reduced.m[a] |= std::uint8_t(1u << i);
  if (has_quat()) {
    QuatType qt;
    for (int k = 0; k < 3; ++k) {
      if (present(quat_comp_[k], qb)) qt.s3h |= std::uint8_t(4 >> k);
      if (present(quat_comp_[3 + k], qb)) qt.h |= std::uint8_t(4 >> k);
    }
    r.quat = qt;
  }
  r.common_lee = !present(lee_comp_, qb);
  return r;
}

std::vector<TypeTriple> Engine::canonical_cells() const {
  std::vector<int> masks;
  if (n() == 1)
    masks = {0x0, 0x2, 0x8, 0xA};
  else
    for (int m = 0; m < 16; ++m) masks.push_back(m);
  std::vector<TypeTriple> cells;
  for (std::size_t a = 0; a < masks.size(); ++a)
    for (std::size_t b = a; b < masks.size(); ++b)
      for (std::size_t c = b; c < masks.size(); ++c) cells.emplace_back(masks[a], masks[b], masks[c]);
  return cells;
}

std::vector<ReductionResult> Engine::enumerate() const {
  std::vector<ReductionResult> out;
  for (const TypeTriple& t : canonical_cells()) out.push_back(generic_reduction(t));
  return out;
}

bool Engine::cross_check(const ReductionResult& r, std::mt19937_64& rng, int samples) const {
  SubspaceBasis q = constraint_subspace(r.input);
  if (q.dim() == 0) return r.reduced == TypeTriple() && (!r.quat || *r.quat == QuatType{});
  std::normal_distribution<double> nd;
  int agree = 0;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd c(q.dim());
    for (int k = 0; k < c.size(); ++k) c(k) = nd(rng);
    TorsionParams p = ps_.from_vector(q.columns * c);
    TorsionTriple t = reconstruct(frame_, p);
    TypeTriple got;
    for (Structure a : kStructures) got.m[index_of(a)] = gh_type(gh_[index_of(a)], t[a], 1e-6);
    bool ok = got == r.reduced;
    if (has_quat()) ok = ok && quat_type(ps_, iso_, p, 1e-6) == *r.quat;
    agree += ok;
  }
  return 2 * agree > samples;
}

// ------------------------------------------------------------------- reports

CountsReport counts(const std::vector<ReductionResult>& results) {
  CountsReport c;
  std::set<TypeTriple> reduced;
  std::set<std::pair<TypeTriple, std::string>> with_quat;
  for (const auto& r : results) {
    c.n = r.n;
    ++c.total;
    if (r.reduced == TypeTriple()) ++c.hyperkahler;
    if (r.reduced == TypeTriple(8, 8, 8) && r.common_lee) ++c.lck;
    if (r.reduced == r.input) ++c.unreduced;
    TypeTriple canon = r.reduced.canonical();
    reduced.insert(canon);
    with_quat.insert({canon, r.quat ? r.quat->digits() : std::string("--")});
  }
  c.distinct_reduced = int(reduced.size());
  c.distinct_reduced_with_quat = int(with_quat.size());
  return c;
}

std::vector<ReductionResult> diff_results(const std::vector<ReductionResult>& low,
                                          const std::vector<ReductionResult>& high) {
  std::map<TypeTriple, const ReductionResult*> idx;
  for (const auto& r : high) idx[r.input] = &r;
  std::vector<ReductionResult> out;
  for (const auto& r : low) {
    auto it = idx.find(r.input);
    if (it == idx.end()) {
      out.push_back(r);
      continue;
    }
    const ReductionResult& h = *it->second;
    bool differ = r.reduced != h.reduced;
    if (r.quat && h.quat)
      differ = differ || r.quat->s3h != (h.quat->s3h & 3) || r.quat->h != (h.quat->h & 3);
    if (differ) out.push_back(r);
  }
  return out;
}

// ------------------------------------------------------------ theorem checks

bool same_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rel_tol) {
  if (a.cols() != b.cols()) throw std::invalid_argument("same_kernel: domain mismatch");
  auto unit = [](const Eigen::MatrixXd& m) {
    if (m.size() == 0) return m;
    double s = singular_values(m)(0);
    return s > 0 ? Eigen::MatrixXd(m / s) : m;
  };
  Eigen::MatrixXd ua = unit(a), ub = unit(b);
  Eigen::MatrixXd st(ua.rows() + ub.rows(), ua.cols());
  st << ua, ub;
  const int ra = numeric_rank(ua, rel_tol), rb = numeric_rank(ub, rel_tol), rs = numeric_rank(st, rel_tol);
  return ra == rb && rb == rs;
}

namespace {

struct Checker {
  const Engine& e;
  std::map<TypeTriple, ReductionResult> cache;
  std::vector<ClauseResult> out;

  const ReductionResult& get(const TypeTriple& t) {
    auto it = cache.find(t);
    if (it == cache.end()) it = cache.emplace(t, e.generic_reduction(t)).first;
    return it->second;
  }

  static std::string describe(const ReductionResult& r) {
    std::string s = r.input.hex() + " -> " + r.reduced.hex();
    if (r.quat) s += " quat " + r.quat->digits();
    if (!r.common_lee) s += " (Lee forms differ)";
    return s;
  }

  // K-structure class contained in `target`
  void k_within(const std::string& name, std::vector<TypeTriple> cells, unsigned target) {
    ClauseResult c{name, true, ""};
    for (const auto& t : cells) {
      const auto& r = get(t);
      if (r.reduced.m[2] & ~target) {
        c.passed = false;
        c.detail += describe(r) + "; ";
      }
    }
    if (c.passed) c.detail = std::to_string(cells.size()) + " cell(s)";
    out.push_back(c);
  }

  void hyperkahler(const std::string& name, std::vector<TypeTriple> cells) {
    ClauseResult c{name, true, ""};
    for (const auto& t : cells) {
      const auto& r = get(t);
      if (r.reduced != TypeTriple()) {
        c.passed = false;
        c.detail += describe(r) + "; ";
      }
    }
    if (c.passed) c.detail = std::to_string(cells.size()) + " cell(s)";
    out.push_back(c);
  }

  void lc_hyperkahler(const std::string& name, std::vector<TypeTriple> cells) {
    ClauseResult c{name, true, ""};
    for (const auto& t : cells) {
      const auto& r = get(t);
      if (!r.reduced.subset_of(TypeTriple(8, 8, 8)) || !r.common_lee) {
        c.passed = false;
        c.detail += describe(r) + "; ";
      }
    }
    if (c.passed) c.detail = std::to_string(cells.size()) + " cell(s)";
    out.push_back(c);
  }

  void quat_within(const std::string& name, std::vector<TypeTriple> cells, unsigned s, unsigned h) {
    ClauseResult c{name, true, ""};
    for (const auto& t : cells) {
      const auto& r = get(t);
      if (!r.quat || (r.quat->s3h & ~s) || (r.quat->h & ~h)) {
        c.passed = false;
        c.detail += describe(r) + "; ";
      }
    }
    if (c.passed) c.detail = std::to_string(cells.size()) + " cell(s)";
    out.push_back(c);
  }

  void common_lee(const std::string& name, const TypeTriple& t) {
    const auto& r = get(t);
    out.push_back({name, r.common_lee, describe(r)});
  }

  void kernels(const std::string& name, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    bool ok = same_kernel(a, b);
    std::ostringstream os;
    os << "ranks " << numeric_rank(a) << " / " << numeric_rank(b);
    out.push_back({name, ok, os.str()});
  }
};

// map of params -> f(params) flattened
Eigen::MatrixXd param_map(const ParamSpace& ps,
                          const std::function<Eigen::VectorXd(const TorsionParams&)>& f) {
  return operator_matrix(ps.dim(), [&](const Eigen::VectorXd& v) { return f(ps.from_vector(v)); });
}

Eigen::VectorXd stack(std::initializer_list<Eigen::VectorXd> parts) {
  Eigen::Index n = 0;
  for (const auto& p : parts) n += p.size();
  Eigen::VectorXd v(n);
  n = 0;
  for (const auto& p : parts) {
    v.segment(n, p.size()) = p;
    n += p.size();
  }
  return v;
}

}  // namespace

std::vector<ClauseResult> verify_theorems(const Engine& e) {
  Checker ck{e, {}, {}};
  const int n = e.n();
  const QuatFrame& f = e.frame();
  const ParamSpace& ps = e.params();

  // common Lee form criterion, valid in every dimension
  {
    Eigen::MatrixXd lhs = e.lee_difference_map();
    Eigen::MatrixXd rhs = param_map(ps, [&](const TorsionParams& p) {
      OneForm v[3];
      for (Structure a : kStructures)
        v[index_of(a)] = act(f, a, p.lam(a)) + act(f, a, extract_eta(p.alp(a)));
      return stack({v[0] - v[1], v[1] - v[2]});
    });
    ck.kernels("lee: common Lee form iff I(l+e) agree", lhs, rhs);
  }
  if (n < 2) return ck.out;

  const bool dim8 = n == 2;
  const unsigned C = 0xC;

  // type closure
  {
    ClauseResult agg{"closure(i)", true, ""};
    for (unsigned m = 0; m < 16; ++m) {
      const auto& r = ck.get(TypeTriple(C, m, 0xF));
      if (r.reduced.m[2] & ~m) {
        agg.passed = false;
        agg.detail += Checker::describe(r) + "; ";
      }
    }
    if (agg.passed) agg.detail = "16 cells";
    ck.out.push_back(agg);
  }
  for (unsigned c : {1u, 2u}) ck.k_within("closure(ii)", {TypeTriple(c | C, c | C, 0xF)}, c | C);
  ck.k_within("closure(iii)", {TypeTriple(3, 3, 0xF)}, C);
  for (unsigned c : {1u, 2u}) ck.k_within("closure(iv)", {TypeTriple(0xB, 0xB, c | C)}, C);
  if (dim8) ck.k_within("closure(v)", {TypeTriple(7, 7, 0xD)}, C);
  ck.k_within("closure: I, J integrable => K integrable", {TypeTriple(C, C, 0xF)}, C);

  // hyperKaehler conditions
  ck.hyperkahler("hk(i)", {TypeTriple(3, 3, 3)});
  ck.hyperkahler("hk(ii)", {TypeTriple(1, 2, 0xF)});
  ck.hyperkahler("hk(iii)", {TypeTriple(0, 3, 0xF)});
  ck.hyperkahler("hk(iv)", {TypeTriple(1, 8, 0xF), TypeTriple(2, 8, 0xF), TypeTriple(4, 8, 0xF)});
  ck.hyperkahler("hk(v)", {TypeTriple(0, 9, 0xF), TypeTriple(0, 0xA, 0xF), TypeTriple(0, 0xC, 0xF)});
  ck.hyperkahler("hk(vi)", {TypeTriple(0, 0xB, 7), TypeTriple(0, 0xB, 0xD), TypeTriple(0, 0xB, 0xE)});
  ck.hyperkahler("hk(vii)", {TypeTriple(0, 0xD, 0xE)});
  if (dim8) {
    ck.hyperkahler("hk(viii)", {TypeTriple(1, 4, 0xF)});
    ck.hyperkahler("hk(ix)", {TypeTriple(0, 5, 0xF)});
    ck.hyperkahler("hk(x)", {TypeTriple(0, 7, 0xD)});
  }
  ck.hyperkahler("hk: Kaehler plus integrable", {TypeTriple(0, C, 0xF)});

  // two structures in W3+W4 force a shared Lee form
  ck.common_lee("lee: I, J in W3+W4 share the Lee form", TypeTriple(C, C, 0xF));

  // locally conformal hyperKaehler
  {
    std::vector<TypeTriple> c1, c2, c4, c5;
    std::map<unsigned, std::vector<TypeTriple>> c3;  // keyed by the W_i of I
    const unsigned w[3] = {1, 2, 4};
    for (unsigned i : w) {
      c1.emplace_back(8, i | 8, 0xF);
      c2.emplace_back(i | 8, i | 8, 0xB);
      for (unsigned j : w)
        if (i != j) {
          c3[i].emplace_back(i | 8, C, j | C);
          if (i < j) c4.emplace_back(9, 0xA, i | j | 8);
        }
    }
    for (unsigned cc : {3u, 5u, 6u})
      for (unsigned dd : {3u, 5u, 6u})
        if (cc != dd) c5.emplace_back(8, cc | 8, dd | 8);
    ck.lc_hyperkahler("lck(i)", c1);
    ck.lc_hyperkahler("lck(ii)", c2);
    for (const auto& [i, cells] : c3)
      ck.lc_hyperkahler("lck(iii) I in W" + std::to_string(std::countr_zero(i) + 1) + "+W4", cells);
    ck.lc_hyperkahler("lck(iv)", c4);
    ck.lc_hyperkahler("lck(v)", c5);
  }

  // quaternionic type bounds
  ck.quat_within("quat(i)", {TypeTriple(9, 0xA, 0xF), TypeTriple(0xB, 0xB, 0xB)}, 1, 1);
  ck.quat_within("quat(ii)", {TypeTriple(0xD, 0xD, 0xF)}, 5, 7);
  ck.quat_within("quat(iii)", {TypeTriple(0xE, 0xE, 0xF)}, 3, 7);
  ck.quat_within("quat(iv)", {TypeTriple(9, 1 | 2 | 8, 0xF), TypeTriple(9, 1 | 4 | 8, 0xF)}, 5, 5);
  ck.quat_within("quat(v)", {TypeTriple(0xA, 2 | 1 | 8, 0xF), TypeTriple(0xA, 2 | 4 | 8, 0xF)}, 3, 3);
  ck.quat_within("quat(vi)", {TypeTriple(C, C, 0xF)}, 0, 7);
  ck.quat_within("quat(vii)", {TypeTriple(1, 5, 5)}, 4, 4);
  ck.quat_within("quat(viii)", {TypeTriple(2, 6, 6)}, 2, 2);
  ck.quat_within("quat(ix)", {TypeTriple(5, 5, 5)}, 4, 7);
  ck.quat_within("quat(x)", {TypeTriple(6, 6, 6)}, 2, 7);
  ck.quat_within("quat(xi)", {TypeTriple(1, 6, 7), TypeTriple(2, 5, 7), TypeTriple(3, 5, 6)}, 6, 6);
  ck.quat_within("quat(xii)", {TypeTriple(5, 6, 7)}, 6, 7);
  if (dim8) {
    ck.quat_within("quat(xiii)", {TypeTriple(5, 7, 0xA)}, 3, 2);
    ck.quat_within("quat(xiv)", {TypeTriple(5, 5, 8)}, 1, 0);
  }

  // alpha and lambda determinations, for every structure
  const IsotypicDecomposition& iso = e.alpha_iso();
  auto restrict_alpha = [&](const char* lab) {
    // params -> params with lambdas kept (E only) and alphas projected to `lab`
    const IsotypicComponent* c = iso.find(lab);
    Eigen::MatrixXd proj = c ? c->projector() : Eigen::MatrixXd::Zero(ps.alpha_dim(), ps.alpha_dim());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ps.dim(), ps.dim());
    const bool keep_lambda = std::string(lab) == kEMod;
    if (keep_lambda) m.topLeftCorner(3 * f.dim(), 3 * f.dim()).setIdentity();
    for (Structure a : kStructures)
      m.block(ps.alpha_offset(a), ps.alpha_offset(a), ps.alpha_dim(), ps.alpha_dim()) = proj;
    return m;
  };
  const Eigen::MatrixXd r3 = restrict_alpha(kLambda3), rk = restrict_alpha(kKMod), re = restrict_alpha(kEMod);
  for (Structure a : kStructures) {
    const Structure b = next(a), c = prev(a);
    const std::string tag = std::string(" [") + label(a) + "]";
    auto combo = [&](const Eigen::MatrixXd& restr, double sign) {
      return Eigen::MatrixXd(param_map(ps, [&](const TorsionParams& p) -> Eigen::VectorXd {
        Tensor t = slot_act(f, b, 0, p.alp(b)) + slot_act(f, c, 0, p.alp(c)) * sign;
        return t.vec();
      }) * restr);
    };
    ck.kernels("alpha-split(a)" + tag, e.gh_component_map(a, 1) * r3, combo(r3, -1.0));
    ck.kernels("alpha-split(b)" + tag, e.gh_component_map(a, 3) * r3, combo(r3, +1.0));
    ck.kernels("alpha-split(c)" + tag, e.gh_component_map(a, 2) * rk, combo(rk, -1.0));
    ck.kernels("alpha-split(d)" + tag, e.gh_component_map(a, 3) * rk, combo(rk, +1.0));

    Eigen::MatrixXd w12(2 * e.gh_component_map(a, 1).rows(), ps.dim());
    w12 << e.gh_component_map(a, 1) * re, e.gh_component_map(a, 2) * re;
    Eigen::MatrixXd w34(w12.rows(), ps.dim());
    w34 << e.gh_component_map(a, 3) * re, e.gh_component_map(a, 4) * re;
    Eigen::MatrixXd minus = param_map(ps, [&](const TorsionParams& p) {
      return stack({lambda_minus(f, p, a), eta_minus(f, p, a)});
    });
    Eigen::MatrixXd plus = param_map(ps, [&](const TorsionParams& p) {
      return stack({lambda_plus(f, p, a), eta_plus(f, p, a)});
    });
    ck.kernels("lambda-split(a)" + tag, w12, minus);
    ck.kernels("lambda-split(b)" + tag, w34, plus);
  }

  // (J_(1)K_(2) + eps K_(1)J_(2)) kills J_(1)a_J - eps K_(1)a_K only when it vanishes
  for (double eps : {1.0, -1.0}) {
    auto diff = [&](const TorsionParams& p) {
      return slot_act(f, Structure::J, 0, p.alp(Structure::J)) -
             slot_act(f, Structure::K, 0, p.alp(Structure::K)) * eps;
    };
    Eigen::MatrixXd plain = param_map(ps, [&](const TorsionParams& p) -> Eigen::VectorXd { return diff(p).vec(); });
    Eigen::MatrixXd acted = param_map(ps, [&](const TorsionParams& p) -> Eigen::VectorXd {
      Tensor d = diff(p);
      Tensor t = slot_act(f, Structure::J, 0, slot_act(f, Structure::K, 1, d)) +
                 slot_act(f, Structure::K, 0, slot_act(f, Structure::J, 1, d)) * eps;
      return t.vec();
    });
    ck.kernels(eps > 0 ? "sign(eps = +1)" : "sign(eps = -1)", acted, plain);
  }
  return ck.out;
}

}  // namespace quatlas
