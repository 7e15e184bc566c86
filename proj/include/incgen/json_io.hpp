#pragma once

#include "incgen/counting.hpp"
#include "incgen/error.hpp"
#include "incgen/generation.hpp"
#include "incgen/inc_matrix.hpp"
#include "incgen/poset.hpp"
#include "incgen/real_complex.hpp"
#include "incgen/ring.hpp"

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace incgen {

using Json = nlohmann::ordered_json;

/// Serialized element forms: Z/p^e as a decimal residue; a matrix-ring
/// element as a row-major array of k^2 scalars, each a coefficient list (low
/// degree first); a product element as the array of its component forms.
/// Readers additionally accept a bare number wherever a coefficient list is
/// expected, meaning the constant with that integer value.
inline Json elem_to_json(const RingElem& a) {
    const BaseRing& r = a.ring();
    switch (r.kind()) {
    case RingKind::local_z:
        return Json(a.data()[0]);
    case RingKind::simple: {
        const FieldSpec& f = r.components()[0].field;
        Json arr = Json::array();
        for (auto scalar : a.data())
            arr.push_back(f.to_coeffs(scalar));
        return arr;
    }
    case RingKind::product: {
        Json arr = Json::array();
        for (int c = 1; c <= r.component_count(); ++c)
            arr.push_back(elem_to_json(project_component(a, c)));
        return arr;
    }
    }
    throw Error("WrongRingKind", "unknown ring kind");
}

namespace detail {

inline std::uint64_t scalar_from_json(const FieldSpec& f, const Json& j) {
    if (j.is_number_integer())
        return f.from_coeffs({j.get<long long>()});
    if (!j.is_array())
        throw Error("InvalidElement", "field scalar must be a number or a coefficient array");
    std::vector<long long> coeffs;
    for (const auto& c : j) {
        if (!c.is_number_integer())
            throw Error("InvalidElement", "field coefficients must be integers");
        coeffs.push_back(c.get<long long>());
    }
    return f.from_coeffs(coeffs);
}

inline std::vector<std::uint64_t> simple_data_from_json(const BaseRing::Component& comp, const Json& j) {
    const std::size_t kk = static_cast<std::size_t>(comp.k) * comp.k;
    if (j.is_number_integer()) { // bare number: integer multiple of the identity
        std::vector<std::uint64_t> data(kk, 0);
        std::uint64_t s = comp.field.from_coeffs({j.get<long long>()});
        for (std::uint32_t i = 0; i < comp.k; ++i)
            data[static_cast<std::size_t>(i) * comp.k + i] = s;
        return data;
    }
    if (!j.is_array() || j.size() != kk)
        throw Error("InvalidElement", "matrix element must be a row-major array of " +
                                          std::to_string(kk) + " scalars");
    std::vector<std::uint64_t> data(kk);
    for (std::size_t s = 0; s < kk; ++s)
        data[s] = scalar_from_json(comp.field, j[s]);
    return data;
}

} // namespace detail

inline RingElem elem_from_json(const BaseRing& r, const Json& j) {
    switch (r.kind()) {
    case RingKind::local_z: {
        if (!j.is_number_integer())
            throw Error("InvalidElement", "Z/p^e element must be an integer residue");
        return r.integer_elem(j.get<long long>());
    }
    case RingKind::simple:
        return r.elem_from_raw(detail::simple_data_from_json(r.components()[0], j));
    case RingKind::product: {
        if (!j.is_array() || static_cast<int>(j.size()) != r.component_count())
            throw Error("InvalidElement", "product element must list all " +
                                              std::to_string(r.component_count()) + " components");
        std::vector<std::uint64_t> data(r.words());
        std::size_t off = 0;
        for (int c = 0; c < r.component_count(); ++c) {
            auto part = detail::simple_data_from_json(r.components()[static_cast<std::size_t>(c)],
                                                      j[static_cast<std::size_t>(c)]);
            std::copy(part.begin(), part.end(), data.begin() + static_cast<std::ptrdiff_t>(off));
            off += part.size();
        }
        return r.elem_from_raw(std::move(data));
    }
    }
    throw Error("WrongRingKind", "unknown ring kind");
}

/// n x n nested array of serialized elements; off-pattern cells are written
/// as canonical zeros and must deserialize to zero.
inline Json matrix_to_json(const IncMatrix& m) {
    const int n = m.poset().size();
    Json rows = Json::array();
    for (int i = 1; i <= n; ++i) {
        Json row = Json::array();
        for (int j = 1; j <= n; ++j)
            row.push_back(elem_to_json(m.get(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IncMatrix matrix_from_json(const Poset& poset, const BaseRing& ring, const Json& j) {
    const int n = poset.size();
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw Error("InvalidElement", "matrix must be an array of " + std::to_string(n) + " rows");
    IncMatrix m(poset, ring);
    for (int i = 1; i <= n; ++i) {
        const Json& row = j[static_cast<std::size_t>(i - 1)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw Error("InvalidElement", "matrix row " + std::to_string(i) + " must have " +
                                              std::to_string(n) + " entries");
        for (int c = 1; c <= n; ++c) {
            RingElem e = elem_from_json(ring, row[static_cast<std::size_t>(c - 1)]);
            if (poset.pair_index(i, c) < 0) {
                if (!e.is_zero())
                    throw Error("OffPatternEntry", "OffPatternEntry(" + std::to_string(i) + "," +
                                                       std::to_string(c) + "): pair is incomparable");
            } else {
                m.set(i, c, e);
            }
        }
    }
    return m;
}

/// Tuple file: { "poset": <poset text or {"n":..,"rel":[[i,j],..]}>,
/// "ring": "<ring spec>", "matrices": [ <n x n arrays> ] }.
struct TupleFile {
    Poset poset;
    BaseRing ring;
    std::vector<IncMatrix> matrices;
};

inline Poset poset_from_json(const Json& j) {
    if (j.is_string())
        return parse_poset(j.get<std::string>());
    if (j.is_object()) {
        if (!j.contains("n") || !j["n"].is_number_integer())
            throw Error("SyntaxError", "inline poset needs an integer field \"n\"");
        std::string text = "n " + std::to_string(j["n"].get<long long>()) + "\n";
        if (j.contains("rel")) {
            if (!j["rel"].is_array())
                throw Error("SyntaxError", "inline poset field \"rel\" must be an array of pairs");
            for (const auto& pair : j["rel"]) {
                if (!pair.is_array() || pair.size() != 2)
                    throw Error("SyntaxError", "inline poset pairs must be [i, j]");
                text += "rel " + std::to_string(pair[0].get<long long>()) + " " +
                        std::to_string(pair[1].get<long long>()) + "\n";
            }
        }
        return parse_poset(text);
    }
    throw Error("SyntaxError", "poset must be a poset-file string or an inline object");
}

inline TupleFile tuple_file_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("poset") || !j.contains("ring") || !j.contains("matrices"))
        throw Error("SyntaxError", "tuple file needs \"poset\", \"ring\" and \"matrices\"");
    Poset poset = poset_from_json(j["poset"]);
    BaseRing ring = BaseRing::parse(j["ring"].get<std::string>());
    if (!j["matrices"].is_array())
        throw Error("SyntaxError", "\"matrices\" must be an array");
    std::vector<IncMatrix> mats;
    for (const auto& mj : j["matrices"])
        mats.push_back(matrix_from_json(poset, ring, mj));
    return TupleFile{std::move(poset), std::move(ring), std::move(mats)};
}

inline Json tuple_file_to_json(const TupleFile& t) {
    Json j = Json::object();
    j["poset"] = write_poset(t.poset);
    j["ring"] = t.ring.to_string();
    Json mats = Json::array();
    for (const auto& m : t.matrices)
        mats.push_back(matrix_to_json(m));
    j["matrices"] = std::move(mats);
    return j;
}

inline Json rational_to_json(const Rational& r) {
    Json j = Json::object();
    j["num"] = boost::multiprecision::numerator(r).str();
    j["den"] = boost::multiprecision::denominator(r).str();
    return j;
}

inline Json cover_data_to_json(const Poset& p) {
    Json j = Json::object();
    j["n"] = p.size();
    j["rho"] = p.rho();
    j["c"] = p.cover_count();
    Json covers = Json::array();
    for (auto [i, k] : p.cover_data().covers)
        covers.push_back(Json::array({i, k}));
    j["covers"] = std::move(covers);
    return j;
}

inline Json gen_report_to_json(const GenReport& rep) {
    Json j = Json::object();
    j["verdict"] = rep.verdict;
    if (!rep.delta.empty() && !rep.delta[0].empty())
        j["ring"] = rep.delta[0][0].ring().to_string();
    Json delta = Json::array();
    for (const auto& row : rep.delta) {
        Json jrow = Json::array();
        for (const auto& e : row)
            jrow.push_back(elem_to_json(e));
        delta.push_back(std::move(jrow));
    }
    j["delta"] = std::move(delta);
    j["failed_row_pair"] = rep.failed_row_pair
                               ? Json::array({rep.failed_row_pair->first, rep.failed_row_pair->second})
                               : Json();
    j["failed_cover"] =
        rep.failed_cover ? Json::array({rep.failed_cover->first, rep.failed_cover->second}) : Json();
    if (rep.per_component.empty()) {
        j["per_component"] = Json();
    } else {
        Json comps = Json::array();
        for (const auto& sub : rep.per_component)
            comps.push_back(gen_report_to_json(sub));
        j["per_component"] = std::move(comps);
    }
    return j;
}

inline Json count_report_to_json(const CountReport& rep) {
    Json j = Json::object();
    j["m"] = rep.m;
    j["rho"] = rep.rho;
    j["c"] = rep.c;
    j["count"] = rep.count.str();
    j["total"] = rep.total.str();
    j["probability"] = rational_to_json(rep.probability);
    j["mgen"] = rep.mgen;
    return j;
}

inline Json mc_report_to_json(const McReport& rep) {
    Json j = Json::object();
    j["trials"] = rep.trials;
    j["passes"] = rep.passes;
    j["fraction"] = rational_to_json(rep.fraction);
    j["min_margin"] = std::isfinite(rep.min_margin) ? Json(rep.min_margin) : Json();
    j["seed"] = rep.seed;
    j["generator"] = GaussianStream::name();
    return j;
}

inline Json radical_to_json(const RadicalData& rad) {
    Json j = Json::object();
    j["size"] = rad.size.str();
    Json basis = Json::array();
    for (const auto& m : rad.basis)
        basis.push_back(matrix_to_json(m));
    j["basis"] = std::move(basis);
    return j;
}

} // namespace incgen
