#pragma once

#include <string>

#include <json.hpp>

#include "sticky/ito_algebra.hpp"
#include "sticky/moments.hpp"

namespace sticky {

using Json = nlohmann::ordered_json;

inline Json scalar_to_json(const Scalar& s) {
    Json arr = Json::array();
    for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
        Json term;
        term["ep"] = it->first.ep;
        term["em"] = it->first.em;
        term["re"] = rational_to_string(it->second.re);
        term["im"] = rational_to_string(it->second.im);
        arr.push_back(std::move(term));
    }
    return arr;
}

inline Scalar scalar_term_from_json(const Json& j) {
    return Scalar::monomial(j.at("ep").get<int>(), j.at("em").get<int>(),
                            {parse_rational(j.at("re").get<std::string>()),
                             parse_rational(j.at("im").get<std::string>())});
}

/// Accepts both the list form and a bare single-term object.
inline Scalar scalar_from_json(const Json& j) {
    if (j.is_object()) return scalar_term_from_json(j);
    Scalar s;
    for (const auto& term : j) s += scalar_term_from_json(term);
    return s;
}

inline Json algebra_to_json(const ItoAlgebra& alg) {
    Json j;
    j["labels"] = alg.labels();
    j["time"] = alg.label_name(alg.time_index());
    Json table = Json::array();
    for (int i = 0; i < alg.size(); ++i)
        for (int k = 0; k < alg.size(); ++k) {
            const LinComb& entry = alg.product(i, k);
            if (entry.empty()) continue;
            Json row;
            row["left"] = alg.label_name(i);
            row["right"] = alg.label_name(k);
            Json result = Json::array();
            for (const auto& [l, c] : entry) {
                Json cell;
                cell["label"] = alg.label_name(l);
                cell["coef"] = scalar_to_json(c);
                result.push_back(std::move(cell));
            }
            row["result"] = std::move(result);
            table.push_back(std::move(row));
        }
    j["table"] = std::move(table);
    return j;
}

inline AlgebraPtr algebra_from_json(const Json& j) {
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto time = j.at("time").get<std::string>();
    auto index_of = [&](const std::string& name) {
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == name) return static_cast<int>(i);
        throw std::invalid_argument("algebra json: unknown label '" + name + "'");
    };
    std::map<std::pair<int, int>, LinComb> table;
    for (const auto& row : j.at("table")) {
        LinComb entry;
        for (const auto& cell : row.at("result"))
            lincomb_add(entry, index_of(cell.at("label").get<std::string>()),
                        scalar_from_json(cell.at("coef")));
        table[{index_of(row.at("left").get<std::string>()),
               index_of(row.at("right").get<std::string>())}] = std::move(entry);
    }
    return std::make_shared<ItoAlgebra>(labels, time, std::move(table));
}

inline Json element_to_json(const TensorElement& x) {
    const ItoAlgebra& alg = *x.algebra();
    Json terms = Json::array();
    for (const auto& [w, c] : x.terms()) {
        Json term;
        Json word = Json::array();
        for (int l : w) word.push_back(alg.label_name(l));
        term["word"] = std::move(word);
        term["coef"] = scalar_to_json(c);
        terms.push_back(std::move(term));
    }
    Json j;
    j["terms"] = std::move(terms);
    return j;
}

inline TensorElement element_from_json(const Json& j, AlgebraPtr alg) {
    TensorElement x = TensorElement::zero(alg);
    for (const auto& term : j.at("terms")) {
        Word w;
        for (const auto& name : term.at("word"))
            w.push_back(alg->require_label(name.get<std::string>()));
        x.add_term(std::move(w), scalar_from_json(term.at("coef")));
    }
    return x;
}

inline Json moment_report_to_json(const MomentReport& r) {
    Json j;
    j["order"] = r.order;
    j["method"] = r.method;
    j["w"] = scalar_to_json(r.w);
    j["a"] = rational_to_string(r.a);
    j["b"] = rational_to_string(r.b);
    j["sigma"] = r.sigma.to_string();
    if (r.moment_is_rational()) {
        j["moment"] = rational_to_string(r.moment_rational());
    } else if (r.moment.is_constant()) {
        const GaussianRational c = r.moment.constant_value();
        j["moment"] = Json{{"re", rational_to_string(c.re)}, {"im", rational_to_string(c.im)}};
    } else {
        j["moment"] = scalar_to_json(r.moment);
    }
    return j;
}

}  // namespace sticky
