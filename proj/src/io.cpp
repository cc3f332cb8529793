#include "steklov/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace steklov {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void emit(std::string& out, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  const char* colon = indent < 0 ? ":" : ": ";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += colon;
        emit(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const json& e : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        emit(out, e, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

json point_json(Point p) { return json::array({p.x, p.y}); }

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  emit(out, j, indent, 0);
  return out;
}

json domain_to_json(const DiskPairDomain& d) {
  json arcs = json::array();
  for (const Arc& a : d.arcs()) {
    arcs.push_back({{"center", point_json(a.center)},
                    {"radius", a.radius},
                    {"angle_from", a.angle_from},
                    {"angle_to", a.angle_to}});
  }
  json corners = json::array();
  for (Point c : d.corners()) corners.push_back(point_json(c));
  json j = {{"schema", domain_schema}, {"mode", to_string(d.mode())}, {"scale", d.scale()},
            {"corners", corners},      {"arcs", arcs}};
  if (d.mode() != DomainMode::Disk) j["ell"] = d.ell();
  return j;
}

DiskPairDomain domain_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != domain_schema) {
    throw std::invalid_argument(std::string("domain document must have schema ") + domain_schema);
  }
  const DomainMode mode = parse_domain_mode(j.at("mode").get<std::string>());
  const double scale = j.value("scale", 1.0);
  const DiskPairDomain d = mode == DomainMode::Disk
                               ? DiskPairDomain::unit_disk(scale)
                               : DiskPairDomain::make(j.at("ell").get<double>(), mode, scale);
  if (j.contains("arcs") && j.at("arcs").size() != d.arcs().size()) {
    throw std::invalid_argument("domain document lists the wrong number of arcs");
  }
  return d;
}

json spectrum_to_json(const DiskPairDomain& d, const SolverSettings& s, const SteklovSpectrum& sp) {
  json domain = {{"mode", to_string(d.mode())}};
  domain["ell"] = d.mode() == DomainMode::Disk ? json(nullptr) : json(d.ell());
  return {{"schema", spectrum_schema},
          {"domain", domain},
          {"n_per_arc", s.n_per_arc},
          {"grading", s.grading},
          {"panel_order", s.panel_order},
          {"tol", s.tol},
          {"eigenvalues", sp.eigenvalues},
          {"labels", sp.labels},
          {"gaps", sp.gaps},
          {"multiplicity", sp.multiplicity},
          {"est_error", sp.est_error}};
}

std::string spectrum_to_csv(const SteklovSpectrum& sp) {
  std::string out = "index,eigenvalue,label,gap,multiplicity\n";
  for (int i = 0; i < sp.size(); ++i) {
    out += std::to_string(i + 1) + ',' + format_number(sp.eigenvalues[i]) + ',' + sp.labels[i] +
           ',' + (i < static_cast<int>(sp.gaps.size()) ? format_number(sp.gaps[i]) : "") + ',' +
           std::to_string(sp.multiplicity[i]) + '\n';
  }
  return out;
}

json certificate_to_json(const Certificate& c) {
  json params = json::object();
  for (const auto& [key, value] : c.params) {
    std::visit([&](const auto& v) { params[key] = v; }, value);
  }
  json measured = json::object(), reference = json::object(), tolerance = json::object(),
       relation = json::object();
  for (const Check& k : c.checks) {
    measured[k.what] = k.measured;
    reference[k.what] = k.reference;
    tolerance[k.what] = k.tolerance;
    relation[k.what] = to_string(k.relation);
  }
  json notes = json::object();
  for (const auto& [key, value] : c.notes) notes[key] = value;
  json j = {{"name", c.name},           {"params", params},
            {"measured", measured},     {"reference", reference},
            {"tolerance", tolerance},   {"relation", relation},
            {"verdict", c.passed() ? "pass" : "fail"},
            {"provenance", c.provenance}};
  if (!c.passed()) j["failed_check"] = c.first_failure();
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace steklov
