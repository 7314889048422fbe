#include "modform/catalog.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <mutex>

#include "modform/djbasis.hpp"
#include "modform/eigen.hpp"

namespace modform {

namespace {

long parse_long(std::string_view text, const std::string& spec) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::parse, "bad integer '" + std::string(text) + "' in form spec '" + spec + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// Text after the n-th colon.
std::string tail_after(const std::string& s, int n) {
  size_t pos = 0;
  for (int i = 0; i < n; ++i) {
    pos = s.find(':', pos);
    if (pos == std::string::npos) throw Error(Errc::parse, "malformed form spec '" + s + "'");
    ++pos;
  }
  return s.substr(pos);
}

std::vector<EigenformPackage> eigenforms(long k, long prec) {
  static std::mutex mu;
  static std::map<long, std::pair<long, std::vector<EigenformPackage>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(k);
  if (it == cache.end() || it->second.first < prec) {
    cache[k] = {prec, eigen_decompose(k, prec)};
    it = cache.find(k);
  }
  return it->second.second;
}

struct FileForm {
  long weight;
  RatSeries series;
};

FileForm read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open series file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, "invalid JSON in '" + path + "': " + e.what());
  }
  if (!j.contains("weight")) throw Error(Errc::parse, "series file '" + path + "' needs a 'weight'");
  return {j["weight"].get<long>(), rat_series_from_json(j)};
}

FormSeries multiply(const FormSeries& a, const FormSeries& b) {
  const long w = a.weight + b.weight;
  if (a.is_rational() && b.is_rational()) {
    return FormSeries::rational(series_mul(std::get<RatSeries>(a.series), std::get<RatSeries>(b.series)), w);
  }
  if (a.is_rational() || b.is_rational()) {
    const FormSeries& nf = a.is_rational() ? b : a;
    const FormSeries& q = a.is_rational() ? a : b;
    const NfSeries lifted = to_field(std::get<RatSeries>(q.series), nf.field());
    return FormSeries::in_field(series_mul(std::get<NfSeries>(nf.series), lifted), w, nf.embedding);
  }
  if (!a.field()->same_as(*b.field())) {
    throw Error(Errc::kind_mismatch, "cannot multiply forms over different coefficient fields");
  }
  return FormSeries::in_field(series_mul(std::get<NfSeries>(a.series), std::get<NfSeries>(b.series)), w, a.embedding);
}

FormSeries scale(FormSeries f, const Rational& c) {
  if (auto* s = std::get_if<RatSeries>(&f.series)) {
    *s *= c;
  } else {
    auto& n = std::get<NfSeries>(f.series);
    n *= NfElement(n.leading().field(), c);
  }
  return f;
}

FormSeries resolve_atom(const std::string& spec, long prec);

FormSeries resolve_any(const std::string& spec, long prec) {
  if (spec.find('*') != std::string::npos) {
    const auto parts = split(spec, '*');
    // Poles in one factor cost precision in the other; retry with headroom.
    long want = prec;
    for (int attempt = 0; attempt < 4; ++attempt) {
      FormSeries acc = resolve_any(parts[0], want);
      for (size_t i = 1; i < parts.size(); ++i) acc = multiply(acc, resolve_any(parts[i], want));
      if (acc.prec() >= prec) return acc;
      want += prec - acc.prec();
    }
    throw Error(Errc::precision, "could not reach the requested precision for '" + spec + "'");
  }
  return resolve_atom(spec, prec);
}

FormSeries resolve_atom(const std::string& spec, long prec) {
  if (spec.empty()) throw Error(Errc::parse, "empty form spec");
  if (spec.rfind("scale:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() < 3) throw Error(Errc::parse, "expected scale:c:SPEC, got '" + spec + "'");
    return scale(resolve_any(tail_after(spec, 2), prec), parse_rational(parts[1]));
  }
  if (spec.rfind("neg:", 0) == 0) return scale(resolve_any(tail_after(spec, 1), prec), Rational(-1));
  if (spec.rfind("theta:", 0) == 0) {
    const ThetaSeries t = theta_series(GramMatrix::named_or_file(tail_after(spec, 1)), prec);
    return FormSeries::rational(t.series, t.weight);
  }
  if (spec.rfind("file:", 0) == 0) {
    FileForm f = read_series_file(tail_after(spec, 1));
    return FormSeries::rational(std::move(f.series), f.weight);
  }
  const auto parts = split(spec, ':');
  if (parts[0] == "dj") {
    if (parts.size() != 3) throw Error(Errc::parse, "expected dj:k:m, got '" + spec + "'");
    const long k = parse_long(parts[1], spec), m = parse_long(parts[2], spec);
    return FormSeries::rational(dj_basis_element(k, m, prec).series, k);
  }
  if (parts[0] == "eigen") {
    if (parts.size() != 3 && parts.size() != 4) throw Error(Errc::parse, "expected eigen:k:i[:s], got '" + spec + "'");
    const long k = parse_long(parts[1], spec), i = parse_long(parts[2], spec);
    const long s = parts.size() == 4 ? parse_long(parts[3], spec) : 0;
    const long need = std::max(prec, 2 * (dim_Sk(k) + 1));
    const auto pkgs = eigenforms(k, need);
    if (i < 0 || i >= static_cast<long>(pkgs.size())) {
      throw Error(Errc::invalid_argument, "S_" + std::to_string(k) + " has " + std::to_string(pkgs.size()) +
                                              " eigenform orbit(s); index " + std::to_string(i) + " is out of range");
    }
    const auto& pkg = pkgs[static_cast<size_t>(i)];
    if (s < 0 || s >= pkg.degree()) {
      throw Error(Errc::invalid_argument, "conjugate index " + std::to_string(s) + " out of range for a degree " +
                                              std::to_string(pkg.degree()) + " field");
    }
    if (pkg.degree() == 1) {
      return FormSeries::rational(pkg.series.map([](const NfElement& c) { return c.to_rational(); }), k);
    }
    return FormSeries::in_field(s == 0 ? pkg.series : galois_conjugate(pkg.series), k, 0);
  }
  if (spec == "delta") return FormSeries::rational(delta(prec).series, 12);
  if (spec == "j") return FormSeries::rational(j_invariant(prec), 0);
  if (spec.size() > 1 && spec[0] == 'e') {
    const long k = parse_long(std::string_view(spec).substr(1), spec);
    return FormSeries::rational(eisenstein(k, prec).series, k);
  }
  throw Error(Errc::parse, "unknown form spec '" + spec + "'");
}

}  // namespace

ResolvedForm resolve_form(const std::string& spec, long prec) {
  if (prec < 0) throw Error(Errc::precision, "negative precision");
  FormSeries f = resolve_any(spec, prec);
  if (f.prec() > prec) {
    if (auto* s = std::get_if<RatSeries>(&f.series)) {
      *s = s->truncated(prec);
    } else {
      auto& n = std::get<NfSeries>(f.series);
      n = n.truncated(prec);
    }
  }
  if (f.prec() < prec) {
    throw Error(Errc::precision, "'" + spec + "' resolved only through q^" + std::to_string(f.prec()));
  }
  return {spec, std::move(f)};
}

long spec_weight(const std::string& spec) {
  if (spec.find('*') != std::string::npos) {
    long w = 0;
    for (const auto& part : split(spec, '*')) w += spec_weight(part);
    return w;
  }
  if (spec.rfind("scale:", 0) == 0) return spec_weight(tail_after(spec, 2));
  if (spec.rfind("neg:", 0) == 0) return spec_weight(tail_after(spec, 1));
  if (spec.rfind("theta:", 0) == 0) return GramMatrix::named_or_file(tail_after(spec, 1)).weight();
  if (spec.rfind("file:", 0) == 0) return read_series_file(tail_after(spec, 1)).weight;
  const auto parts = split(spec, ':');
  if ((parts[0] == "dj" || parts[0] == "eigen") && parts.size() >= 2) return parse_long(parts[1], spec);
  if (spec == "delta") return 12;
  if (spec == "j") return 0;
  if (spec.size() > 1 && spec[0] == 'e') return parse_long(std::string_view(spec).substr(1), spec);
  throw Error(Errc::parse, "unknown form spec '" + spec + "'");
}

}  // namespace modform
