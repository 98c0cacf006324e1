#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "curvature.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "isometry.hpp"
#include "lattice.hpp"
#include "phbuild.hpp"

namespace nilgeo {

using Json = nlohmann::json;

// ----------------------------------------------------------------------------
// Rational scalars travel as strings "p/q" (or "p"); bare JSON integers are
// accepted on input for convenience.
// ----------------------------------------------------------------------------

inline Rat parse_rat(const Json& v) {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (!v.is_string()) throw ParseError("expected a rational as a string \"p/q\"");
    try {
        return Rat::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline Vec<Rat> parse_rat_vec(const Json& v, std::size_t want_len = 0) {
    if (!v.is_array()) throw ParseError("expected an array of rationals");
    if (want_len && v.size() != want_len)
        throw ParseError("expected " + std::to_string(want_len) + " rationals, got " +
                         std::to_string(v.size()));
    Vec<Rat> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(parse_rat(e));
    return out;
}

inline Mat<Rat> parse_rat_mat(const Json& v) {
    if (!v.is_array() || v.empty()) throw ParseError("expected a nonempty array of rows");
    std::size_t cols = v.front().is_array() ? v.front().size() : 0;
    if (cols == 0) throw ParseError("expected nonempty matrix rows");
    Mat<Rat> m(v.size(), cols);
    for (std::size_t i = 0; i < v.size(); ++i) {
        Vec<Rat> row = parse_rat_vec(v[i], cols);
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = row[j];
    }
    return m;
}

inline Json rat_mat_json(const Mat<Rat>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

// ----------------------------------------------------------------------------
// Algebra documents: {"name", "basis", "brackets": [{"x","y","out":{lbl:"p/q"}}],
// "metric": [{"a","b","value":"p/q"}]}.  Unlisted entries are zero; duplicates
// are rejected.
// ----------------------------------------------------------------------------

inline NilAlgebra load_algebra(const Json& doc) {
    if (!doc.is_object()) throw ParseError("algebra document must be a JSON object");
    if (!doc.contains("basis") || !doc["basis"].is_array() || doc["basis"].empty())
        throw ParseError("algebra document needs a nonempty \"basis\" array");
    std::vector<std::string> labels;
    for (const auto& b : doc["basis"]) {
        if (!b.is_string()) throw ParseError("basis labels must be strings");
        labels.push_back(b.get<std::string>());
    }
    std::string name = doc.value("name", std::string("algebra"));
    AlgebraBuilder bld(name, labels);

    std::set<std::pair<std::size_t, std::size_t>> seen_br;
    if (doc.contains("brackets")) {
        if (!doc["brackets"].is_array()) throw ParseError("\"brackets\" must be an array");
        for (const auto& e : doc["brackets"]) {
            if (!e.is_object() || !e.contains("x") || !e.contains("y") || !e.contains("out"))
                throw ParseError("bracket entries need \"x\", \"y\", \"out\"");
            std::string x = e["x"].get<std::string>(), y = e["y"].get<std::string>();
            std::size_t i = bld.index(x), j = bld.index(y);
            if (i == j) throw ParseError("bracket entry with x == y: " + x);
            if (!seen_br.insert({std::min(i, j), std::max(i, j)}).second)
                throw ParseError("duplicate bracket entry [" + x + ", " + y + "]");
            std::map<std::string, Rat> out;
            if (!e["out"].is_object()) throw ParseError("\"out\" must map labels to rationals");
            for (const auto& [lbl, val] : e["out"].items()) out[lbl] = parse_rat(val);
            bld.set_bracket(x, y, out);
        }
    }

    std::set<std::pair<std::size_t, std::size_t>> seen_ip;
    if (doc.contains("metric")) {
        if (!doc["metric"].is_array()) throw ParseError("\"metric\" must be an array");
        for (const auto& e : doc["metric"]) {
            if (!e.is_object() || !e.contains("a") || !e.contains("b") || !e.contains("value"))
                throw ParseError("metric entries need \"a\", \"b\", \"value\"");
            std::string a = e["a"].get<std::string>(), b = e["b"].get<std::string>();
            std::size_t i = bld.index(a), j = bld.index(b);
            if (!seen_ip.insert({std::min(i, j), std::max(i, j)}).second)
                throw ParseError("duplicate metric entry <" + a + ", " + b + ">");
            bld.set_ip(a, b, parse_rat(e["value"]));
        }
    }
    return bld.build();
}

inline NilAlgebra load_algebra_file(const std::string& path) {
    return load_algebra(read_json_file(path));
}

inline Json algebra_to_json(const NilAlgebra& A) {
    Json doc;
    doc["name"] = A.name();
    doc["basis"] = A.labels();
    Json brackets = Json::array();
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = i + 1; j < A.dim(); ++j) {
            const Vec<Rat>& br = A.basis_bracket(i, j);
            if (vis_zero(br)) continue;
            Json out;
            for (std::size_t k = 0; k < A.dim(); ++k)
                if (!br[k].is_zero()) out[A.labels()[k]] = br[k].str();
            brackets.push_back({{"x", A.labels()[i]}, {"y", A.labels()[j]}, {"out", out}});
        }
    doc["brackets"] = std::move(brackets);
    Json metric = Json::array();
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = i; j < A.dim(); ++j)
            if (!(A.gram()(i, j) == Rat(0)))
                metric.push_back({{"a", A.labels()[i]},
                                  {"b", A.labels()[j]},
                                  {"value", A.gram()(i, j).str()}});
    doc["metric"] = std::move(metric);
    return doc;
}

// ----------------------------------------------------------------------------
// Lattice documents: {"generators": [["p/q", ...], ...]}.
// ----------------------------------------------------------------------------

inline LatticeSpec load_lattice(const Json& doc, std::size_t dim) {
    if (!doc.is_object() || !doc.contains("generators") || !doc["generators"].is_array())
        throw ParseError("lattice document needs a \"generators\" array");
    LatticeSpec spec;
    spec.name = doc.value("name", std::string("lattice"));
    for (const auto& g : doc["generators"]) spec.generators.push_back(parse_rat_vec(g, dim));
    if (spec.generators.empty()) throw ParseError("lattice document has no generators");
    return spec;
}

// ----------------------------------------------------------------------------
// Map documents: {"matrix": [["p/q", ...], ...]} on the declared basis order.
// ----------------------------------------------------------------------------

inline CandidateMap load_map(const Json& doc) {
    if (!doc.is_object() || !doc.contains("matrix"))
        throw ParseError("map document needs a \"matrix\" field");
    CandidateMap f;
    f.matrix = parse_rat_mat(doc["matrix"]);
    f.name = doc.value("name", std::string("map"));
    return f;
}

// ----------------------------------------------------------------------------
// Seed documents: {"dimU","dimZ","dimE","signsZ","signsE","j":{label: rows}}.
// ----------------------------------------------------------------------------

inline PhSeed load_seed(const Json& doc) {
    if (!doc.is_object()) throw ParseError("seed document must be a JSON object");
    for (const char* key : {"dimU", "dimZ", "dimE"})
        if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 0)
            throw ParseError(std::string("seed document needs nonnegative integer \"") + key +
                             "\"");
    PhSeed seed;
    seed.dim_U = doc["dimU"].get<std::size_t>();
    seed.dim_Z = doc["dimZ"].get<std::size_t>();
    seed.dim_E = doc["dimE"].get<std::size_t>();
    seed.name = doc.value("name", std::string("ph"));
    auto signs = [&](const char* key, std::size_t want) {
        std::vector<int> out;
        if (doc.contains(key)) {
            if (!doc[key].is_array()) throw ParseError(std::string(key) + " must be an array");
            for (const auto& s : doc[key]) {
                int v = s.get<int>();
                if (v != 1 && v != -1) throw ParseError(std::string(key) + " entries must be +-1");
                out.push_back(v);
            }
        }
        if (out.size() != want)
            throw ParseError(std::string(key) + " must list " + std::to_string(want) + " signs");
        return out;
    };
    seed.signs_Z = signs("signsZ", seed.dim_Z);
    seed.signs_E = signs("signsE", seed.dim_E);

    if (!doc.contains("j") || !doc["j"].is_object())
        throw ParseError("seed document needs a \"j\" object keyed by central basis labels");
    std::vector<std::string> central = ph_central_labels(seed);
    if (doc["j"].size() != central.size())
        throw ParseError("\"j\" must have exactly one matrix per central basis label");
    for (const auto& lbl : central) {
        if (!doc["j"].contains(lbl)) throw ParseError("\"j\" is missing the matrix for " + lbl);
        seed.j.push_back(parse_rat_mat(doc["j"][lbl]));
    }
    return seed;
}

inline Json seed_to_json(const PhSeed& seed) {
    Json doc;
    doc["name"] = seed.name;
    doc["dimU"] = seed.dim_U;
    doc["dimZ"] = seed.dim_Z;
    doc["dimE"] = seed.dim_E;
    doc["signsZ"] = seed.signs_Z;
    doc["signsE"] = seed.signs_E;
    Json jm;
    std::vector<std::string> central = ph_central_labels(seed);
    for (std::size_t k = 0; k < central.size(); ++k) jm[central[k]] = rat_mat_json(seed.j[k]);
    doc["j"] = std::move(jm);
    return doc;
}

// ----------------------------------------------------------------------------
// Analysis report: sparse exact tensors plus the flatness/pH verdicts.
// ----------------------------------------------------------------------------

namespace detail {

inline Json sparse3(const std::vector<std::vector<Vec<Rat>>>& T) {
    Json out = Json::array();
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = 0; j < T[i].size(); ++j)
            for (std::size_t k = 0; k < T[i][j].size(); ++k)
                if (!T[i][j][k].is_zero())
                    out.push_back({{"indices", {i, j, k}}, {"value", T[i][j][k].str()}});
    return out;
}

inline Json sparse4(const std::vector<std::vector<std::vector<Vec<Rat>>>>& T) {
    Json out = Json::array();
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = 0; j < T[i].size(); ++j)
            for (std::size_t k = 0; k < T[i][j].size(); ++k)
                for (std::size_t l = 0; l < T[i][j][k].size(); ++l)
                    if (!T[i][j][k][l].is_zero())
                        out.push_back({{"indices", {i, j, k, l}}, {"value", T[i][j][k][l].str()}});
    return out;
}

inline Json sparse2(const Mat<Rat>& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero())
                out.push_back({{"indices", {i, j}}, {"value", m(i, j).str()}});
    return out;
}

} // namespace detail

inline Json analyze_to_json(const NilAlgebra& A) {
    Json doc;
    doc["name"] = A.name();
    doc["dim"] = A.dim();
    auto sig = A.signature();
    doc["signature"] = {sig.first, sig.second};

    Decomposition D = witt_decompose(A);
    Json dec;
    dec["exact"] = D.exact();
    dec["dimU"] = D.p;
    dec["dimZ"] = D.q;
    dec["dimV"] = D.p;
    dec["dimE"] = D.s;
    dec["signsZ"] = D.signs_Z;
    dec["signsE"] = D.signs_E;
    dec["adapted_labels"] = D.adapted_labels;
    if (D.exact())
        dec["adapted_basis"] = rat_mat_json(D.cob);
    else {
        Json rows = Json::array();
        for (std::size_t i = 0; i < D.cob_d.rows(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < D.cob_d.cols(); ++j) row.push_back(D.cob_d(i, j));
            rows.push_back(std::move(row));
        }
        dec["adapted_basis"] = std::move(rows);
    }
    doc["decomposition"] = std::move(dec);

    ConnectionTable T = connection_table(A);
    CurvatureTensor R = curvature_tensor(A, T);
    doc["connection"] = detail::sparse3(T.nabla);
    doc["curvature"] = detail::sparse4(R.R);
    Mat<Rat> ric = ricci(A, R);
    doc["ricci"] = detail::sparse2(ric);
    doc["scalar"] = scalar_curvature(A, ric).str();

    FlatnessReport F = flatness_report(A, D, R);
    doc["flat"] = F.is_flat;
    doc["e0f_sufficient"] = F.e0f_sufficient;
    doc["homaloidal_center"] = F.homaloidal_center;

    if (D.exact()) {
        PhReport P = ph_type_check(A, D);
        doc["ph"] = P.is_ph;
        if (P.witness) doc["ph_witness"] = P.witness->what;
    } else {
        doc["ph"] = ph_type_check_numeric(A, D).is_ph;
    }
    return doc;
}

/// Aligned-text rendering of the analysis report.
inline std::string analyze_to_text(const NilAlgebra& A) {
    Json doc = analyze_to_json(A);
    std::ostringstream os;
    os << "algebra:   " << doc["name"].get<std::string>() << " (dim " << doc["dim"].get<int>()
       << ", signature " << doc["signature"][0].get<int>() << "+/"
       << doc["signature"][1].get<int>() << "-)\n";
    const auto& dec = doc["decomposition"];
    os << "blocks:    U " << dec["dimU"].get<int>() << "  Z " << dec["dimZ"].get<int>() << "  V "
       << dec["dimV"].get<int>() << "  E " << dec["dimE"].get<int>()
       << (dec["exact"].get<bool>() ? "  (exact)" : "  (approximate)") << "\n";
    auto tensor_lines = [&](const char* key, const char* sym) {
        const auto& arr = doc[key];
        os << key << ":" << std::string(key == std::string("connection") ? 1 : 2, ' ')
           << arr.size() << " nonzero entries\n";
        for (const auto& e : arr) {
            os << "  " << sym << "(";
            for (std::size_t i = 0; i + 1 < e["indices"].size(); ++i) {
                if (i) os << ", ";
                os << A.labels()[e["indices"][i].get<std::size_t>()];
            }
            os << ") -> " << A.labels()[e["indices"].back().get<std::size_t>()] << "  *  "
               << e["value"].get<std::string>() << "\n";
        }
    };
    tensor_lines("connection", "nabla");
    tensor_lines("curvature", "R");
    os << "ricci:     ";
    if (doc["ricci"].empty())
        os << "0\n";
    else {
        os << "\n";
        for (const auto& e : doc["ricci"])
            os << "  Ric(" << A.labels()[e["indices"][0].get<std::size_t>()] << ", "
               << A.labels()[e["indices"][1].get<std::size_t>()] << ") = "
               << e["value"].get<std::string>() << "\n";
    }
    os << "scalar:    " << doc["scalar"].get<std::string>() << "\n";
    os << "flat:      " << (doc["flat"].get<bool>() ? "true" : "false") << "\n";
    os << "pH type:   " << (doc["ph"].get<bool>() ? "true" : "false");
    if (doc.contains("ph_witness")) os << "  (" << doc["ph_witness"].get<std::string>() << ")";
    os << "\n";
    return os.str();
}

} // namespace nilgeo
