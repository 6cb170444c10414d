#pragma once
/**
 * File formats: chirotope files (explicit signs or exact rational points),
 * tree files, and the binary order-type database (n coordinate pairs per
 * record, 8-bit coordinates up to n = 8, 16-bit little-endian for n = 9
 * and 10; a big-endian switch covers foreign dumps).
 */

#include <array>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chiro/geometry.hpp"
#include "chiro/tree.hpp"

namespace chiro {

using json = nlohmann::json;

namespace detail {

inline Int json_int(const json& v, const std::string& what) {
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>());
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, what + ": not an integer literal");
    }
  }
  throw Error(ErrorKind::ParseError, what + ": expected an integer or a decimal string");
}

inline std::array<Label, 3> parse_triple_key(const std::string& key) {
  std::array<Label, 3> out;
  std::stringstream ss(key);
  for (int i = 0; i < 3; ++i)
    if (!std::getline(ss, out[static_cast<size_t>(i)], ','))
      throw Error(ErrorKind::ParseError, "malformed triple key '" + key + "'");
  std::string extra;
  if (std::getline(ss, extra))
    throw Error(ErrorKind::ParseError, "malformed triple key '" + key + "'");
  if (!(out[0] < out[1] && out[1] < out[2]))
    throw Error(ErrorKind::ParseError, "triple key '" + key + "' is not sorted");
  return out;
}

}  // namespace detail

/// A chirotope file holds either explicit signs on sorted triples or exact
/// rational points aligned with the label list. Point entries are
/// [xnum, xden, ynum, yden] or the shorthand [x, y]; integers may also be
/// written as decimal strings.
inline std::variant<SignFunction, PointConfig> parse_chirotope_file(const json& j) {
  if (!j.is_object() || !j.contains("labels"))
    throw Error(ErrorKind::ParseError, "chirotope file needs a labels array");
  std::vector<Label> labels;
  for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());

  if (j.contains("points")) {
    const auto& pts = j.at("points");
    if (pts.size() != labels.size())
      throw Error(ErrorKind::ParseError, "points and labels differ in length");
    PointConfig pc;
    for (size_t i = 0; i < labels.size(); ++i) {
      const auto& e = pts.at(i);
      Rat x, y;
      if (e.size() == 2) {
        x = Rat(detail::json_int(e.at(0), "x"));
        y = Rat(detail::json_int(e.at(1), "y"));
      } else if (e.size() == 4) {
        x = Rat(detail::json_int(e.at(0), "xnum"), detail::json_int(e.at(1), "xden"));
        y = Rat(detail::json_int(e.at(2), "ynum"), detail::json_int(e.at(3), "yden"));
      } else {
        throw Error(ErrorKind::ParseError, "point entries need 2 or 4 numbers");
      }
      pc.insert(labels[i], RatPoint{std::move(x), std::move(y)});
    }
    return pc;
  }

  if (j.contains("signs")) {
    std::map<std::array<Label, 3>, int> signs;
    for (const auto& [key, value] : j.at("signs").items()) {
      int s = static_cast<int>(detail::json_int(value, "sign"));
      signs[detail::parse_triple_key(key)] = s;
    }
    try {
      return SignFunction(labels, signs);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError) throw;
      throw Error(ErrorKind::ParseError, e.what());
    }
  }
  throw Error(ErrorKind::ParseError, "chirotope file needs either signs or points");
}

inline json emit_sign_function(const SignFunction& sf) {
  json signs = json::object();
  const auto& g = sf.ground();
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j)
      for (size_t k = j + 1; k < g.size(); ++k)
        signs[g[i] + "," + g[j] + "," + g[k]] =
            sf.sign_by_index(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
  return json{{"labels", g}, {"signs", std::move(signs)}};
}

inline json emit_points(const PointConfig& pc) {
  json labels = json::array(), points = json::array();
  for (const auto& [l, p] : pc.points()) {
    labels.push_back(l);
    auto num = [](const Int& v) {
      // keep plain numbers when they fit; decimal strings otherwise
      if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return json(static_cast<long long>(v));
      return json(v.str());
    };
    points.push_back(json::array(
        {num(numerator(p.x)), num(denominator(p.x)), num(numerator(p.y)), num(denominator(p.y))}));
  }
  return json{{"labels", std::move(labels)}, {"points", std::move(points)}};
}

// ---------------------------------------------------------------------------
// Order type database

struct OrderTypeDb {
  int point_count = 0;   // points per record
  int coord_bytes = 0;   // 1 for n <= 8, 2 for n in {9, 10}
  bool big_endian = false;
  std::vector<unsigned char> data;

  size_t record_size() const {
    return 2 * static_cast<size_t>(coord_bytes) * static_cast<size_t>(point_count);
  }
  size_t record_count() const { return data.size() / record_size(); }
};

inline OrderTypeDb open_order_type_db(const std::string& path, int n, bool big_endian = false) {
  OrderTypeDb db;
  db.point_count = n;
  db.big_endian = big_endian;
  if (n >= 3 && n <= 8)
    db.coord_bytes = 1;
  else if (n == 9 || n == 10)
    db.coord_bytes = 2;
  else
    throw Error(ErrorKind::ParseError, "order type databases cover 3 <= n <= 10");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  db.data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  if (db.data.empty() || db.data.size() % db.record_size() != 0)
    throw Error(ErrorKind::ParseError,
                "file size " + std::to_string(db.data.size()) +
                    " is not a multiple of the record size " + std::to_string(db.record_size()));
  return db;
}

/// Decode one record as exact integer coordinates labeled p0..p{n-1}.
/// Throws Collinear if the stored configuration is degenerate.
inline PointConfig db_get(const OrderTypeDb& db, size_t index, bool validate = true) {
  if (index >= db.record_count())
    throw Error(ErrorKind::IndexOutOfRange,
                std::to_string(index) + " >= " + std::to_string(db.record_count()));
  const unsigned char* rec = db.data.data() + index * db.record_size();
  PointConfig pc;
  for (int i = 0; i < db.point_count; ++i) {
    auto coord = [&](int c) -> long {
      const unsigned char* at = rec + (2 * i + c) * db.coord_bytes;
      if (db.coord_bytes == 1) return static_cast<long>(at[0]);
      return db.big_endian ? static_cast<long>(at[0]) << 8 | at[1]
                           : static_cast<long>(at[1]) << 8 | at[0];
    };
    pc.insert("p" + std::to_string(i), RatPoint{Rat(coord(0)), Rat(coord(1))});
  }
  if (validate) {
    if (auto bad = pc.find_collinear_triple())
      throw Error(ErrorKind::Collinear, "record " + std::to_string(index) + ": " + (*bad)[0] +
                                            "," + (*bad)[1] + "," + (*bad)[2]);
  }
  return pc;
}

/// Indices of degenerate records (warn-and-skip scans).
inline std::vector<size_t> db_scan_degenerate(const OrderTypeDb& db) {
  std::vector<size_t> bad;
  for (size_t i = 0; i < db.record_count(); ++i) {
    try {
      db_get(db, i, true);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Collinear) throw;
      bad.push_back(i);
    }
  }
  return bad;
}

inline void db_write_record(std::ostream& out, const OrderTypeDb& layout, const PointConfig& pc) {
  for (const auto& [l, p] : pc.points()) {
    for (const Rat* r : {&p.x, &p.y}) {
      if (denominator(*r) != 1)
        throw Error(ErrorKind::Precondition, "database coordinates must be integers");
      Int v = numerator(*r);
      long max = layout.coord_bytes == 1 ? 0xff : 0xffff;
      if (v < 0 || v > max)
        throw Error(ErrorKind::Precondition, "coordinate out of range for the record width");
      long w = static_cast<long>(v);
      if (layout.coord_bytes == 1) {
        out.put(static_cast<char>(w));
      } else if (layout.big_endian) {
        out.put(static_cast<char>(w >> 8));
        out.put(static_cast<char>(w & 0xff));
      } else {
        out.put(static_cast<char>(w & 0xff));
        out.put(static_cast<char>(w >> 8));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Tree files

struct LoadedTree {
  ChirotopeTree tree;
  std::map<NodeId, PointConfig> node_points;  // nodes given by coordinates
};

/// Tree files list nodes (explicit signs, points, or a db_index resolved
/// against a database supplied by the caller; db node j gets labels
/// n{id}.{j}) and proxy-selecting edges.
inline LoadedTree load_tree(const json& j, const OrderTypeDb* db = nullptr) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges"))
    throw Error(ErrorKind::ParseError, "tree file needs nodes and edges");
  std::map<NodeId, Chirotope> nodes;
  std::map<NodeId, PointConfig> points;
  for (const auto& nj : j.at("nodes")) {
    NodeId id = nj.at("id").get<NodeId>();
    if (nodes.count(id)) throw Error(ErrorKind::ParseError, "duplicate node id");
    if (nj.contains("db_index")) {
      if (!db) throw Error(ErrorKind::ParseError, "tree references db_index but no database given");
      PointConfig raw = db_get(*db, nj.at("db_index").get<size_t>());
      PointConfig pc;
      int i = 0;
      for (const auto& [l, p] : raw.points())
        pc.insert("n" + std::to_string(id) + "." + std::to_string(i++), p);
      nodes.emplace(id, chirotope_of_points(pc));
      points.emplace(id, std::move(pc));
    } else {
      auto parsed = parse_chirotope_file(nj);
      if (std::holds_alternative<PointConfig>(parsed)) {
        PointConfig pc = std::get<PointConfig>(std::move(parsed));
        nodes.emplace(id, chirotope_of_points(pc));
        points.emplace(id, std::move(pc));
      } else {
        nodes.emplace(id, Chirotope::validated(std::get<SignFunction>(std::move(parsed))));
      }
    }
  }
  std::vector<TreeEdge> edges;
  for (const auto& ej : j.at("edges"))
    edges.push_back(TreeEdge{ej.at("u").get<NodeId>(), ej.at("u_proxy").get<std::string>(),
                             ej.at("v").get<NodeId>(), ej.at("v_proxy").get<std::string>()});
  return LoadedTree{ChirotopeTree(std::move(nodes), std::move(edges)), std::move(points)};
}

inline json emit_tree(const ChirotopeTree& tree,
                      const std::map<NodeId, PointConfig>* node_points = nullptr) {
  json nodes = json::array();
  for (const auto& [id, chi] : tree.nodes()) {
    json nj;
    if (node_points && node_points->count(id))
      nj = emit_points(node_points->at(id));
    else
      nj = emit_sign_function(chi.signs());
    nj["id"] = id;
    nodes.push_back(std::move(nj));
  }
  json edges = json::array();
  for (const TreeEdge& e : tree.edges())
    edges.push_back(json{{"u", e.u}, {"u_proxy", e.u_proxy}, {"v", e.v}, {"v_proxy", e.v_proxy}});
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

}  // namespace chiro
