#include "diolab/psi.hpp"

#include <algorithm>
#include <stdexcept>

namespace diolab::psi {

using arith::totient;
using arith::vec_gcd;

struct PsiSpec::Data {
  Kind kind;

  // power_law
  Rat c;
  Rat tau;

  // radial_table / explicit_table
  std::map<std::int64_t, Rat> radial;
  std::map<IntVec, Rat> table;

  // ds_counterexample
  std::int64_t N = 0;
  Rat eta;

  // catlin_transform / threshold_part
  std::optional<PsiSpec> inner;
  std::int64_t t_max = 0;
  ThresholdPart part = ThresholdPart::small_part;
};

namespace {

[[noreturn]] void kind_mismatch(const char* what) {
  throw std::logic_error(std::string("PsiSpec: accessor '") + what +
                         "' does not match the variant");
}

void check_argument(const PsiSpec& spec, const IntVec& q) {
  if (q.dim() < 1 || q.is_zero())
    throw std::domain_error("PsiSpec::eval: q must be nonzero");
  if (!q.nonnegative())
    throw std::domain_error("PsiSpec::eval: q must lie in the nonnegative orthant");
  if (auto d = spec.dim(); d && *d != q.dim())
    throw std::domain_error("PsiSpec::eval: dimension mismatch");
}

}  // namespace

PsiSpec PsiSpec::power_law(const Rat& c, const Rat& tau) {
  if (c <= 0) throw std::domain_error("PsiSpec::power_law: c must be positive");
  auto d = std::make_shared<Data>();
  d->kind = Kind::power_law;
  d->c = c;
  d->tau = tau;
  return PsiSpec(std::move(d));
}

PsiSpec PsiSpec::radial_table(std::map<std::int64_t, Rat> values) {
  for (const auto& [k, v] : values) {
    if (k < 1) throw std::domain_error("PsiSpec::radial_table: keys must be >= 1");
    if (v < 0) throw std::domain_error("PsiSpec::radial_table: negative value");
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::radial_table;
  d->radial = std::move(values);
  return PsiSpec(std::move(d));
}

PsiSpec PsiSpec::explicit_table(std::map<IntVec, Rat> values) {
  int dim = 0;
  for (const auto& [q, v] : values) {
    if (q.is_zero() || !q.nonnegative())
      throw std::domain_error("PsiSpec::explicit_table: keys must be nonzero, nonnegative");
    if (dim == 0)
      dim = q.dim();
    else if (q.dim() != dim)
      throw std::domain_error("PsiSpec::explicit_table: mixed key dimensions");
    if (v < 0) throw std::domain_error("PsiSpec::explicit_table: negative value");
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::explicit_table;
  d->table = std::move(values);
  return PsiSpec(std::move(d));
}

PsiSpec PsiSpec::ds_counterexample(std::int64_t N, const Rat& eta) {
  if (N < 1) throw std::domain_error("PsiSpec::ds_counterexample: N must be positive");
  if (eta <= 0) throw std::domain_error("PsiSpec::ds_counterexample: eta must be positive");
  auto d = std::make_shared<Data>();
  d->kind = Kind::ds_counterexample;
  d->N = N;
  d->eta = eta;
  return PsiSpec(std::move(d));
}

PsiSpec PsiSpec::catlin_transform(PsiSpec inner, std::int64_t t_max) {
  if (t_max < 1) throw std::domain_error("PsiSpec::catlin_transform: t_max must be >= 1");
  auto d = std::make_shared<Data>();
  d->kind = Kind::catlin_transform;
  d->inner = std::move(inner);
  d->t_max = t_max;
  return PsiSpec(std::move(d));
}

PsiSpec PsiSpec::threshold_part(PsiSpec inner, ThresholdPart part) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::threshold_part;
  d->inner = std::move(inner);
  d->part = part;
  return PsiSpec(std::move(d));
}

PsiSpec::Kind PsiSpec::kind() const { return d_->kind; }

std::optional<int> PsiSpec::dim() const {
  switch (d_->kind) {
    case Kind::explicit_table:
      if (d_->table.empty()) return std::nullopt;
      return d_->table.begin()->first.dim();
    case Kind::ds_counterexample:
      return 1;
    case Kind::catlin_transform:
    case Kind::threshold_part:
      return d_->inner->dim();
    default:
      return std::nullopt;
  }
}

bool PsiSpec::rational_valued() const {
  switch (d_->kind) {
    case Kind::power_law:
      // Integer exponents keep |q|^(-tau) rational at every argument.
      return rat_den(d_->tau) == 1;
    case Kind::radial_table:
    case Kind::explicit_table:
    case Kind::ds_counterexample:
      return true;
    case Kind::catlin_transform:
    case Kind::threshold_part:
      return d_->inner->rational_valued();
  }
  return false;
}

std::optional<std::int64_t> PsiSpec::support_norm() const {
  switch (d_->kind) {
    case Kind::power_law:
      return std::nullopt;
    case Kind::radial_table:
      return d_->radial.empty() ? 0 : d_->radial.rbegin()->first;
    case Kind::explicit_table: {
      std::int64_t best = 0;
      for (const auto& [q, v] : d_->table) {
        (void)v;
        best = std::max(best, q.norm());
      }
      return best;
    }
    case Kind::ds_counterexample:
      return d_->N;
    case Kind::catlin_transform:
      // A nonzero psi_bar(q) needs inner(t q) != 0 somewhere, and |t q| >= |q|.
      return d_->inner->support_norm();
    case Kind::threshold_part:
      return d_->inner->support_norm();
  }
  return std::nullopt;
}

Value PsiSpec::eval(const IntVec& q, unsigned prec) const {
  check_argument(*this, q);
  switch (d_->kind) {
    case Kind::power_law: {
      Value base{Rat(q.norm())};
      Rat neg_tau = -d_->tau;
      return Value(d_->c) * base.pow_rat(neg_tau, prec);
    }
    case Kind::radial_table: {
      auto it = d_->radial.find(q.norm());
      return it == d_->radial.end() ? Value(Rat(0)) : Value(it->second);
    }
    case Kind::explicit_table: {
      auto it = d_->table.find(q);
      return it == d_->table.end() ? Value(Rat(0)) : Value(it->second);
    }
    case Kind::ds_counterexample: {
      std::int64_t v = q.c[0];
      if (d_->N % v != 0) return Value(Rat(0));
      Rat out = d_->eta * Rat(v, d_->N);
      return Value(std::move(out));
    }
    case Kind::catlin_transform:
      return catlin_bar(*d_->inner, q, d_->t_max, prec).value;
    case Kind::threshold_part: {
      Value v = d_->inner->eval(q, prec);
      std::int64_t g = vec_gcd(q);
      Rat bound(g, 2 * static_cast<std::int64_t>(totient(static_cast<std::uint64_t>(g))));
      std::optional<bool> le = v.less_equal(bound);
      if (!le)
        throw std::domain_error(
            "PsiSpec::eval: threshold comparison undecidable at this precision");
      bool small = *le;
      if (d_->part == ThresholdPart::small_part) return small ? v : Value(Rat(0));
      return small ? Value(Rat(0)) : v;
    }
  }
  throw std::logic_error("PsiSpec::eval: corrupt variant");
}

const Rat& PsiSpec::power_law_c() const {
  if (d_->kind != Kind::power_law) kind_mismatch("power_law_c");
  return d_->c;
}

const Rat& PsiSpec::power_law_tau() const {
  if (d_->kind != Kind::power_law) kind_mismatch("power_law_tau");
  return d_->tau;
}

const std::map<std::int64_t, Rat>& PsiSpec::radial_values() const {
  if (d_->kind != Kind::radial_table) kind_mismatch("radial_values");
  return d_->radial;
}

const std::map<IntVec, Rat>& PsiSpec::explicit_values() const {
  if (d_->kind != Kind::explicit_table) kind_mismatch("explicit_values");
  return d_->table;
}

std::int64_t PsiSpec::counterexample_N() const {
  if (d_->kind != Kind::ds_counterexample) kind_mismatch("counterexample_N");
  return d_->N;
}

const Rat& PsiSpec::counterexample_eta() const {
  if (d_->kind != Kind::ds_counterexample) kind_mismatch("counterexample_eta");
  return d_->eta;
}

const PsiSpec& PsiSpec::inner() const {
  if (d_->kind != Kind::catlin_transform && d_->kind != Kind::threshold_part)
    kind_mismatch("inner");
  return *d_->inner;
}

std::int64_t PsiSpec::transform_t_max() const {
  if (d_->kind != Kind::catlin_transform) kind_mismatch("transform_t_max");
  return d_->t_max;
}

ThresholdPart PsiSpec::part() const {
  if (d_->kind != Kind::threshold_part) kind_mismatch("part");
  return d_->part;
}

CatlinBar catlin_bar(const PsiSpec& spec, const IntVec& q, std::int64_t t_max,
                     unsigned prec) {
  if (t_max < 1) throw std::domain_error("catlin_bar: t_max must be >= 1");
  check_argument(spec, q);

  if (spec.kind() == PsiSpec::Kind::power_law) {
    // psi(t q)/t = c |q|^(-tau) t^(-1-tau) is monotone in t, so the sup sits
    // at an endpoint; tau >= -1 makes t = 1 exact regardless of t_max.
    const Rat& tau = spec.power_law_tau();
    if (tau >= -1) return CatlinBar{spec.eval(q, prec), 1, true};
    Value at_end = spec.eval(t_max * q, prec).div(Value(Rat(t_max)));
    return CatlinBar{std::move(at_end), t_max, false};
  }

  std::int64_t t_stop = t_max;
  bool exact = false;
  if (auto support = spec.support_norm()) {
    // Arguments t q with t |q| beyond the support contribute 0.
    std::int64_t t_contrib = *support / q.norm();
    if (t_contrib <= t_max) exact = true;
    t_stop = std::max<std::int64_t>(1, std::min(t_max, t_contrib));
  }

  CatlinBar best{spec.eval(q, prec), 1, exact};
  for (std::int64_t t = 2; t <= t_stop; ++t) {
    Value cand = spec.eval(t * q, prec).div(Value(Rat(t)));
    if (cand.exact() && best.value.exact()) {
      if (cand.rat() > best.value.rat()) {
        best.value = std::move(cand);
        best.witness_t = t;
      }
    } else {
      // Enclosure path: the max of enclosures still encloses the true sup;
      // the witness is best-effort on midpoints.
      if (cand.approx() > best.value.approx()) best.witness_t = t;
      best.value = Value::max(best.value, cand);
    }
  }
  return best;
}

std::pair<PsiSpec, PsiSpec> threshold_split(const PsiSpec& spec) {
  return {PsiSpec::threshold_part(spec, ThresholdPart::small_part),
          PsiSpec::threshold_part(spec, ThresholdPart::large_part)};
}

namespace {

const char* kind_name(PsiSpec::Kind k) {
  switch (k) {
    case PsiSpec::Kind::power_law: return "power_law";
    case PsiSpec::Kind::radial_table: return "radial_table";
    case PsiSpec::Kind::explicit_table: return "explicit_table";
    case PsiSpec::Kind::ds_counterexample: return "ds_counterexample";
    case PsiSpec::Kind::catlin_transform: return "catlin_transform";
    case PsiSpec::Kind::threshold_part: return "threshold_part";
  }
  return "?";
}

IntVec parse_intvec(const std::string& text) {
  if (text.size() < 3 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("PsiSpec: malformed vector '" + text + "'");
  std::vector<std::int64_t> comps;
  std::string body = text.substr(1, text.size() - 2);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string piece =
        comma == std::string::npos ? body.substr(pos) : body.substr(pos, comma - pos);
    comps.push_back(config::to_int(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return IntVec{std::move(comps)};
}

std::pair<std::string, std::string> split_entry(const std::string& text) {
  std::size_t sp = text.find(' ');
  if (sp == std::string::npos)
    throw std::invalid_argument("PsiSpec: table entry needs 'key value': '" + text + "'");
  return {text.substr(0, sp), text.substr(sp + 1)};
}

}  // namespace

config::Node PsiSpec::to_node() const {
  config::Node n;
  n.add_value("variant", kind_name(d_->kind));
  switch (d_->kind) {
    case Kind::power_law:
      n.add_value("c", rat_to_string(d_->c));
      n.add_value("tau", rat_to_string(d_->tau));
      break;
    case Kind::radial_table:
      for (const auto& [k, v] : d_->radial)
        n.add_value("entry", std::to_string(k) + " " + rat_to_string(v));
      break;
    case Kind::explicit_table:
      for (const auto& [q, v] : d_->table)
        n.add_value("entry", to_string(q) + " " + rat_to_string(v));
      break;
    case Kind::ds_counterexample:
      n.add_value("N", std::to_string(d_->N));
      n.add_value("eta", rat_to_string(d_->eta));
      break;
    case Kind::catlin_transform:
      n.add_value("t_max", std::to_string(d_->t_max));
      n.add_child("inner") = d_->inner->to_node();
      break;
    case Kind::threshold_part:
      n.add_value("part", d_->part == ThresholdPart::small_part ? "small" : "large");
      n.add_child("inner") = d_->inner->to_node();
      break;
  }
  return n;
}

PsiSpec PsiSpec::from_node(const config::Node& node) {
  const std::string& variant = node.value_at("variant");
  if (variant == "power_law")
    return power_law(config::to_rat(node.value_at("c")),
                     config::to_rat(node.value_at("tau")));
  if (variant == "radial_table") {
    std::map<std::int64_t, Rat> values;
    for (const auto* item : node.all("entry")) {
      auto [key, val] = split_entry(item->value);
      values[config::to_int(key)] = config::to_rat(val);
    }
    return radial_table(std::move(values));
  }
  if (variant == "explicit_table") {
    std::map<IntVec, Rat> values;
    for (const auto* item : node.all("entry")) {
      auto [key, val] = split_entry(item->value);
      values[parse_intvec(key)] = config::to_rat(val);
    }
    return explicit_table(std::move(values));
  }
  if (variant == "ds_counterexample")
    return ds_counterexample(config::to_int(node.value_at("N")),
                             config::to_rat(node.value_at("eta")));
  if (variant == "catlin_transform")
    return catlin_transform(from_node(node.child_at("inner")),
                            config::to_int(node.value_at("t_max")));
  if (variant == "threshold_part") {
    const std::string& part = node.value_at("part");
    if (part != "small" && part != "large")
      throw std::invalid_argument("PsiSpec: part must be 'small' or 'large'");
    return threshold_part(from_node(node.child_at("inner")),
                          part == "small" ? ThresholdPart::small_part
                                          : ThresholdPart::large_part);
  }
  throw std::invalid_argument("PsiSpec: unknown variant '" + variant + "'");
}

std::string PsiSpec::to_config() const { return config::serialize(to_node()); }

PsiSpec PsiSpec::parse(std::string_view text) {
  return from_node(config::parse(text));
}

}  // namespace diolab::psi
