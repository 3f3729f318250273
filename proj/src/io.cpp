#include "critgabor/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

namespace critgabor {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void write_signal_csv(const SampledSignal& f, std::ostream& os) {
  os << "x,re,im\n";
  for (std::size_t n = 0; n < f.size(); ++n)
    os << format_double(f.x(n)) << ',' << format_double(f[n].real()) << ',' << format_double(f[n].imag()) << '\n';
}

namespace {
bool parse_number(const std::string& s, double& out) {
  const char* b = s.c_str();
  while (*b == ' ' || *b == '\t') ++b;
  if (*b == '\0') return false;
  char* end = nullptr;
  out = std::strtod(b, &end);
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

SampledSignal signal_from_samples(const std::vector<double>& xs, std::vector<cplx> values) {
  if (xs.size() < 2) throw InputError("signal needs at least two samples");
  const double T = -xs.front();
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  std::unique_ptr<Grid> grid;
  try {
    grid = std::make_unique<Grid>(T, h);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("signal grid is not a symmetric uniform grid: ") + e.what());
  }
  if (grid->size() != xs.size()) throw InputError("signal grid is not symmetric about 0");
  for (std::size_t n = 0; n < xs.size(); ++n)
    if (std::abs(xs[n] - grid->x(n)) > 1e-9 * std::max(1.0, std::abs(xs[n])))
      throw InputError("sample " + std::to_string(n) + " is off the uniform grid");
  return SampledSignal(*grid, std::move(values));
}
}  // namespace

SampledSignal read_signal_csv(std::istream& is) {
  std::vector<double> xs;
  std::vector<cplx> values;
  std::string line;
  long lineno = 0;
  bool header_allowed = true;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    double x = 0, re = 0, im = 0;
    const bool ok = cols.size() == 3 && parse_number(cols[0], x) && parse_number(cols[1], re) && parse_number(cols[2], im);
    if (!ok) {
      if (header_allowed && xs.empty()) {
        header_allowed = false;
        continue;
      }
      throw InputError("line " + std::to_string(lineno) + ": expected three numeric columns x,re,im");
    }
    header_allowed = false;
    xs.push_back(x);
    values.emplace_back(re, im);
  }
  if (xs.empty()) throw InputError("empty signal file");
  return signal_from_samples(xs, std::move(values));
}

json signal_to_json(const SampledSignal& f) {
  json vals = json::array();
  for (const auto& v : f.values()) vals.push_back({v.real(), v.imag()});
  return {{"T", f.grid().half_width()}, {"h", f.grid().step()}, {"values", vals}};
}

SampledSignal signal_from_json(const json& j) {
  try {
    const Grid grid(j.at("T").get<double>(), j.at("h").get<double>());
    const auto& vals = j.at("values");
    if (vals.size() != grid.size())
      throw InputError("values has " + std::to_string(vals.size()) + " entries, grid needs " + std::to_string(grid.size()));
    std::vector<cplx> v;
    v.reserve(vals.size());
    for (const auto& e : vals) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return SampledSignal(grid, std::move(v));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed signal JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid signal grid: ") + e.what());
  }
}

SampledSignal read_signal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw InputError(path + ": " + e.what());
    }
    return signal_from_json(j);
  }
  try {
    return read_signal_csv(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_signal_file(const SampledSignal& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    out << signal_to_json(f).dump() << '\n';
  else
    write_signal_csv(f, out);
}

json coefficients_to_json(const CoefficientSet& c) {
  json arr = json::array();
  for (const auto& [idx, v] : c.entries())
    arr.push_back({{"k", idx.k}, {"j", idx.j}, {"sharp", idx.sharp}, {"re", v.real()}, {"im", v.imag()}});
  return arr;
}

CoefficientSet coefficients_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("coefficients") : j;
  if (!arr.is_array()) throw InputError("coefficient list must be a JSON array");
  CoefficientSet c;
  std::size_t n = 0;
  for (const auto& e : arr) {
    try {
      const LatticeIndex idx{e.at("k").get<int>(), e.at("j").get<int>(), e.value("sharp", false)};
      c.add(idx, cplx(e.at("re").get<double>(), e.value("im", 0.0)));
    } catch (const json::exception& ex) {
      throw InputError("coefficient entry " + std::to_string(n) + ": " + ex.what());
    }
    ++n;
  }
  return c;
}

json expansion_to_json(const RelaxedExpansion& e) {
  return {{"coefficients", coefficients_to_json(e.all())},
          {"sharp",
           {{"k", e.sharp_index.k}, {"j", e.sharp_index.j}, {"re", e.sharp.real()}, {"im", e.sharp.imag()}}},
          {"cutoff", e.cutoff}};
}

json expansion_to_json(const OrderMExpansion& e) {
  json block = json::array(), nodes = json::array();
  for (const auto& b : e.sharp_block) block.push_back({b.real(), b.imag()});
  for (const auto& s : e.nodes) nodes.push_back({s.point().p, s.point().theta});
  return {{"coefficients", coefficients_to_json(e.lattice)},
          {"m", e.m},
          {"sharp_block", block},
          {"nodes", nodes},
          {"cutoff", e.cutoff}};
}

bool order_m_from_json(const json& j, OrderMExpansion& out) {
  if (!j.is_object() || !j.contains("sharp_block")) return false;
  try {
    out.sharp_block.clear();
    out.nodes.clear();
    for (const auto& b : j.at("sharp_block")) out.sharp_block.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
    for (const auto& n : j.at("nodes")) {
      const double p = n.at(0).get<double>(), t = n.at(1).get<double>();
      const LatticeIndex idx{static_cast<int>(std::floor(p)), static_cast<int>(std::floor(t)), true};
      if (idx.point().p != p || idx.point().theta != t) throw InputError("order-m node is not a sharp point");
      out.nodes.push_back(idx);
    }
    if (out.nodes.size() != out.sharp_block.size()) throw InputError("sharp_block and nodes differ in length");
    out.m = static_cast<int>(out.nodes.size()) - 1;
    out.lattice = coefficients_from_json(j);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed order-m expansion: ") + e.what());
  }
  return true;
}

void write_gabor_csv(const GaborField& v, std::ostream& os) {
  os << "p,theta,re,im\n";
  for (std::size_t i = 0; i < v.np(); ++i)
    for (std::size_t j = 0; j < v.nt(); ++j)
      os << format_double(v.p(i)) << ',' << format_double(v.theta(j)) << ',' << format_double(v.at(i, j).real())
         << ',' << format_double(v.at(i, j).imag()) << '\n';
}

void write_zak_csv(const ZakField& z, std::ostream& os) {
  os << "# N=" << z.size() << "\ny,xi,re,im\n";
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j)
      os << format_double(z.y(i)) << ',' << format_double(z.xi(j)) << ',' << format_double(z.at(i, j).real()) << ','
         << format_double(z.at(i, j).imag()) << '\n';
}

json zak_to_json(const ZakField& z) {
  json vals = json::array();
  for (const auto& v : z.values()) vals.push_back({v.real(), v.imag()});
  return {{"N", z.size()}, {"values", vals}};
}

ZakField zak_from_json(const json& j) {
  try {
    ZakField z(j.at("N").get<std::size_t>());
    const auto& vals = j.at("values");
    if (vals.size() != z.values().size()) throw InputError("Zak field has the wrong number of values");
    for (std::size_t k = 0; k < vals.size(); ++k)
      z.values()[k] = cplx(vals[k].at(0).get<double>(), vals[k].at(1).get<double>());
    return z;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed Zak JSON: ") + e.what());
  }
}

PhaseDomain domain_from_json(const json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "disk") {
      const auto& c = j.at("center");
      return PhaseDomain::disk({c.at(0).get<double>(), c.at(1).get<double>()}, j.at("radius").get<double>());
    }
    if (type == "rect") {
      const auto& p = j.at("p");
      const auto& t = j.at("theta");
      return PhaseDomain::rect(p.at(0).get<double>(), p.at(1).get<double>(), t.at(0).get<double>(),
                               t.at(1).get<double>());
    }
    if (type == "polygon") {
      std::vector<PhasePoint> v;
      for (const auto& x : j.at("vertices")) v.push_back({x.at(0).get<double>(), x.at(1).get<double>()});
      return PhaseDomain::polygon(std::move(v));
    }
    if (type == "union") {
      std::vector<PhaseDomain> parts;
      for (const auto& x : j.at("parts")) parts.push_back(domain_from_json(x));
      return PhaseDomain::unite(parts);
    }
    throw InputError("unknown domain type '" + type + "'");
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed domain JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid domain: ") + e.what());
  }
}

json decomposition_to_json(const CertaintyDecomposition& d) {
  const CertaintyReport& r = d.report;
  return {{"alpha", coefficients_to_json(d.alpha)},
          {"omega", coefficients_to_json(d.omega)},
          {"residual_norm", r.residual_norm},
          {"report",
           {{"signal_norm", r.signal_norm},
            {"hdelta", r.hdelta},
            {"concentration", r.concentration},
            {"out_of_box_tail", r.out_of_box_tail},
            {"residual_norm", r.residual_norm},
            {"bound_value", r.bound_value},
            {"bound_constant", r.bound_constant},
            {"lattice_count", r.lattice_count},
            {"sharp_count", r.sharp_count},
            {"atom_count", r.atom_count},
            {"nested", r.nested},
            {"sharp_choice", {r.sharp_choice.point().p, r.sharp_choice.point().theta}},
            {"sharp_candidates", r.candidates},
            {"phase_points", {{"inner", r.points_inner}, {"middle", r.points_middle}, {"outer", r.points_outer}}},
            {"g_norm", r.g_norm},
            {"g_plus_norm", r.g_plus_norm},
            {"g_plus_bound", r.g_plus_bound},
            {"g_minus_norm", r.g_minus_norm},
            {"omega_outside_norm", r.omega_outside_norm},
            {"residual_model_defect", r.residual_model_defect},
            {"least_squares_baseline", {{"residual", r.least_squares_residual}, {"note", "comparison only"}}}}}};
}

}  // namespace critgabor
