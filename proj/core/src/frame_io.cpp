#include "pasflab/frame_io.hpp"

#include <fstream>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pasflab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json family_to_json(const std::vector<Vector>& family, Field field) {
  ordered_json rows = ordered_json::array();
  for (const Vector& v : family) {
    ordered_json row = ordered_json::array();
    for (const Cplx& z : v.coords()) {
      if (field == Field::real)
        row.push_back(z.real());
      else
        row.push_back(ordered_json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Cplx entry_from_json(const ordered_json& e, Field field) {
  if (field == Field::real) {
    if (!e.is_number()) throw FrameIoError("real frame entries must be numbers");
    return {e.get<double>(), 0.0};
  }
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw FrameIoError("complex frame entries must be [re, im] pairs");
  return {e[0].get<double>(), e[1].get<double>()};
}

std::vector<Vector> family_from_json(const ordered_json& rows, const SipSpace& space,
                                     int n, const char* name) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw FrameIoError(std::string(name) + " must be an array of N vectors");
  std::vector<Vector> family;
  family.reserve(static_cast<std::size_t>(n));
  for (const ordered_json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != space.dim())
      throw FrameIoError(std::string(name) + " vectors must have dim entries");
    std::vector<Cplx> coords;
    coords.reserve(row.size());
    for (const ordered_json& e : row) coords.push_back(entry_from_json(e, space.field()));
    try {
      family.emplace_back(std::move(coords), space);
    } catch (const std::invalid_argument& err) {
      throw FrameIoError(std::string(name) + ": " + err.what());
    }
  }
  return family;
}

}  // namespace

std::string frame_to_text(const Pasf& f) {
  const SipSpace& sp = f.space();
  ordered_json j;
  j["p"] = sp.p();
  j["dim"] = sp.dim();
  j["N"] = f.size();
  j["field"] = to_string(sp.field());
  j["omega"] = family_to_json(f.omega(), sp.field());
  j["tau"] = family_to_json(f.tau(), sp.field());
  return j.dump(2) + "\n";
}

Pasf frame_from_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& err) {
    throw FrameIoError(std::string("frame file is not valid JSON: ") + err.what());
  }
  if (!j.is_object()) throw FrameIoError("frame file must hold a JSON object");
  for (const char* key : {"p", "dim", "N", "field", "omega", "tau"})
    if (!j.contains(key)) throw FrameIoError(std::string("missing key \"") + key + "\"");
  if (!j["p"].is_number() || !j["dim"].is_number_integer() || !j["N"].is_number_integer() ||
      !j["field"].is_string())
    throw FrameIoError("p must be a number, dim and N integers, field a string");

  Field field;
  try {
    field = field_from_string(j["field"].get<std::string>());
  } catch (const std::invalid_argument& err) {
    throw FrameIoError(err.what());
  }
  const int dim = j["dim"].get<int>();
  const int n = j["N"].get<int>();
  if (n < 1) throw FrameIoError("N must be >= 1");
  try {
    const SipSpace space(dim, j["p"].get<double>(), field);
    std::vector<Vector> omega = family_from_json(j["omega"], space, n, "omega");
    std::vector<Vector> tau = family_from_json(j["tau"], space, n, "tau");
    return Pasf(space, std::move(omega), std::move(tau));
  } catch (const FrameIoError&) {
    throw;
  } catch (const std::invalid_argument& err) {
    throw FrameIoError(err.what());
  }
}

void save_frame(const Pasf& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FrameIoError("cannot open \"" + path + "\" for writing");
  out << frame_to_text(f);
  if (!out) throw FrameIoError("failed writing \"" + path + "\"");
}

Pasf load_frame(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FrameIoError("cannot open \"" + path + "\"");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return frame_from_text(text);
}

}  // namespace pasflab
