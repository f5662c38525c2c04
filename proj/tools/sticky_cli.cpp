#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sticky/sticky.hpp"

namespace {

using namespace sticky;

enum class Format { Text, Json, Csv };

struct Output {
    Format format = Format::Text;
    std::string out_path;

    void emit(const std::string& text) const {
        if (out_path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
        f << text;
    }
};

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw CLI::ValidationError("--format", "must be one of text, json, csv");
}

AlgebraPtr make_algebra(const std::string& name, const std::optional<std::string>& sigma) {
    std::optional<Rational> s2;
    if (sigma) {
        const Rational s = parse_rational(*sigma);
        if (s < 1) throw std::invalid_argument("sigma must satisfy sigma >= 1");
        s2 = s * s;
    }
    return builtin_algebra(name, s2);
}

std::string render_table_text(const ItoAlgebra& alg) {
    const int n = alg.size();
    std::vector<std::vector<std::string>> cells(static_cast<size_t>(n) + 1,
                                                std::vector<std::string>(static_cast<size_t>(n) + 1));
    for (int j = 0; j < n; ++j) cells[0][static_cast<size_t>(j) + 1] = alg.label_name(j);
    for (int i = 0; i < n; ++i) {
        cells[static_cast<size_t>(i) + 1][0] = alg.label_name(i);
        for (int j = 0; j < n; ++j)
            cells[static_cast<size_t>(i) + 1][static_cast<size_t>(j) + 1] =
                lincomb_to_string(alg, alg.product(i, j));
    }
    std::vector<size_t> width(static_cast<size_t>(n) + 1, 0);
    for (const auto& row : cells)
        for (size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    std::ostringstream os;
    for (size_t i = 0; i < cells.size(); ++i) {
        std::string line;
        for (size_t j = 0; j < cells[i].size(); ++j) {
            line += (j == 0 ? "" : (j == 1 ? " | " : "   "));
            line += cells[i][j] + std::string(width[j] - cells[i][j].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << "\n";
        if (i == 0) {
            for (size_t j = 0; j < width.size(); ++j)
                os << std::string(width[j], '-') << (j == 0 ? "-+-" : (j + 1 < width.size() ? "---" : ""));
            os << "\n";
        }
    }
    return os.str();
}

int cmd_table(const std::string& name, const std::optional<std::string>& sigma, const Output& out) {
    const AlgebraPtr alg = make_algebra(name, sigma);
    switch (out.format) {
        case Format::Text: out.emit(render_table_text(*alg)); break;
        case Format::Json: out.emit(algebra_to_json(*alg).dump(2) + "\n"); break;
        case Format::Csv: {
            std::ostringstream os;
            os << "left,right,label,coef\n";
            for (int i = 0; i < alg->size(); ++i)
                for (int j = 0; j < alg->size(); ++j)
                    for (const auto& [l, c] : alg->product(i, j))
                        os << alg->label_name(i) << ',' << alg->label_name(j) << ','
                           << alg->label_name(l) << ',' << scalar_to_string(c) << "\n";
            out.emit(os.str());
            break;
        }
    }
    return 0;
}

int cmd_product(const std::string& name, const std::string& xs, const std::string& ys,
                bool nonsticky, const std::optional<std::string>& sigma, const Output& out) {
    const AlgebraPtr alg = make_algebra(name, sigma);
    const TensorElement x = parse_element(xs, alg);
    const TensorElement y = parse_element(ys, alg);
    const TensorElement p = nonsticky ? shuffle_product(x, y) : sticky_product(x, y);
    switch (out.format) {
        case Format::Text: out.emit(element_to_string(p) + "\n"); break;
        case Format::Json: out.emit(element_to_json(p).dump(2) + "\n"); break;
        case Format::Csv: {
            std::ostringstream os;
            os << "word,coef\n";
            for (const auto& [w, c] : p.terms())
                os << word_to_string(*alg, w) << ',' << scalar_to_string(c) << "\n";
            out.emit(os.str());
            break;
        }
    }
    return 0;
}

std::string moment_value_string(const MomentReport& r, int digits) {
    if (r.moment_is_rational()) {
        std::string s = rational_to_string(r.moment_rational());
        if (digits > 0) s += " (~" + rational_to_decimal(r.moment_rational(), digits) + ")";
        return s;
    }
    if (r.moment.is_constant()) return gaussian_to_string(r.moment.constant_value());
    return scalar_to_string(r.moment);
}

int cmd_moments(int order, const std::string& sigma_text, const std::string& a_text,
                const std::string& b_text, const std::string& method, bool big_oracle, int workers,
                int digits, const Output& out) {
    const SigmaValue sigma = SigmaValue::parse(sigma_text);
    const Rational a = parse_rational(a_text), b = parse_rational(b_text);
    const AreaWord area = quantum_area_normalized();
    OracleOptions opts;
    opts.allow_large = big_oracle;
    opts.workers = workers;

    std::vector<MomentReport> reports;
    std::vector<std::string> skipped;
    if (method == "all") {
        reports.push_back(moment(area, order, a, b, sigma, MomentMethod::Hopf, opts));
        const int limit = big_oracle ? 8 : opts.limit;
        if (order >= 2 && order <= limit) {
            reports.push_back(moment(area, order, a, b, sigma, MomentMethod::Oracle, opts));
        } else if (order > limit) {
            skipped.push_back("oracle (order above limit " + std::to_string(limit) + ")");
        }
        reports.push_back(moment(area, order, a, b, sigma, MomentMethod::Closed, opts));
    } else if (method == "hopf") {
        reports.push_back(moment(area, order, a, b, sigma, MomentMethod::Hopf, opts));
    } else if (method == "oracle") {
        reports.push_back(moment(area, order, a, b, sigma, MomentMethod::Oracle, opts));
    } else if (method == "closed") {
        reports.push_back(moment(area, order, a, b, sigma, MomentMethod::Closed, opts));
    } else {
        throw CLI::ValidationError("--method", "must be one of hopf, oracle, closed, all");
    }

    bool match = true;
    for (const auto& r : reports)
        if (r.w != reports.front().w || r.moment != reports.front().moment) match = false;

    switch (out.format) {
        case Format::Text: {
            std::ostringstream os;
            for (const auto& r : reports) {
                os << "order " << r.order << " method " << r.method << " sigma "
                   << r.sigma.to_string() << " over [" << rational_to_string(r.a) << ","
                   << rational_to_string(r.b) << ")\n";
                os << "  w      = " << scalar_to_string(r.w) << "\n";
                os << "  moment = " << moment_value_string(r, digits) << "\n";
            }
            for (const auto& s : skipped) os << "skipped: " << s << "\n";
            if (reports.size() > 1) os << "verdict: " << (match ? "match" : "MISMATCH") << "\n";
            out.emit(os.str());
            break;
        }
        case Format::Json: {
            if (reports.size() == 1 && skipped.empty()) {
                out.emit(moment_report_to_json(reports.front()).dump(2) + "\n");
            } else {
                Json j;
                Json arr = Json::array();
                for (const auto& r : reports) arr.push_back(moment_report_to_json(r));
                j["reports"] = std::move(arr);
                if (!skipped.empty()) j["skipped"] = skipped;
                j["verdict"] = match ? "match" : "mismatch";
                out.emit(j.dump(2) + "\n");
            }
            break;
        }
        case Format::Csv: {
            std::ostringstream os;
            os << "order,method,sigma,a,b,moment\n";
            for (const auto& r : reports)
                os << r.order << ',' << r.method << ',' << r.sigma.to_string() << ','
                   << rational_to_string(r.a) << ',' << rational_to_string(r.b) << ','
                   << moment_value_string(r, 0) << "\n";
            out.emit(os.str());
            break;
        }
    }
    return match ? 0 : 1;
}

int cmd_euler(const std::string& kind, int n, const Output& out) {
    if (n < 0) throw std::invalid_argument("--n must be nonnegative");
    const EulerTables tables = make_euler_tables(n);
    std::vector<std::pair<std::string, Int>> rows;  // (j or "", value) with n column
    std::string polynomial;
    if (kind == "zigzag") {
        for (int k = 0; k <= n; ++k)
            rows.emplace_back(std::to_string(k), tables.zigzag[static_cast<size_t>(k)]);
    } else if (kind == "eulerian") {
        const auto& row = tables.eulerian[static_cast<size_t>(n)];
        for (size_t j = 0; j < row.size(); ++j) rows.emplace_back(std::to_string(j), row[j]);
    } else if (kind == "polynomial") {
        const auto& row = tables.euler_poly[static_cast<size_t>(n)];
        std::ostringstream os;
        for (size_t j = 0; j < row.size(); ++j) {
            if (row[j] == 0) continue;
            if (os.tellp() > 0) os << " + ";
            if (row[j] != 1 || j == 0) os << row[j];
            if (j >= 1) {
                if (row[j] != 1) os << "*";
                os << "t";
                if (j >= 2) os << "^" << j;
            }
        }
        polynomial = os.str().empty() ? "0" : os.str();
    } else if (kind == "cyclicdescents") {
        for (int j = 0; j < std::max(n, 1); ++j)
            rows.emplace_back(std::to_string(j), cyclic_descent_count(n, j));
    } else {
        throw CLI::ValidationError("--kind",
                                   "must be one of zigzag, eulerian, polynomial, cyclicdescents");
    }

    switch (out.format) {
        case Format::Text: {
            std::ostringstream os;
            if (kind == "polynomial") {
                os << polynomial << "\n";
            } else {
                for (size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << rows[i].second;
                os << "\n";
            }
            out.emit(os.str());
            break;
        }
        case Format::Json: {
            Json j;
            j["kind"] = kind;
            j["n"] = n;
            if (kind == "polynomial") {
                j["polynomial"] = polynomial;
            } else {
                Json vals = Json::array();
                for (const auto& [jj, v] : rows) vals.push_back(v.str());
                j["values"] = std::move(vals);
            }
            out.emit(j.dump(2) + "\n");
            break;
        }
        case Format::Csv: {
            std::ostringstream os;
            os << "n,j,value\n";
            if (kind == "polynomial") {
                const auto& row = tables.euler_poly[static_cast<size_t>(n)];
                for (size_t j = 0; j < row.size(); ++j)
                    os << n << ',' << j << ',' << row[j] << "\n";
            } else if (kind == "zigzag") {
                for (const auto& [jj, v] : rows) os << jj << ",," << v << "\n";
            } else {
                for (const auto& [jj, v] : rows) os << n << ',' << jj << ',' << v << "\n";
            }
            out.emit(os.str());
            break;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sticky shuffle Hopf algebra calculator: exact Ito tables, tensor products and "
                 "quantum Levy area moments"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string out_path;
    int digits = 6;
    app.add_option("--format", format, "Output format: text, json or csv")->capture_default_str();
    app.add_option("--out", out_path, "Write output to this file instead of stdout");
    app.add_option("--digits", digits, "Decimal digits for approximate display (text format only)")
        ->capture_default_str();

    auto* t = app.add_subcommand("table", "Print a built-in Ito multiplication table");
    std::string t_name;
    std::optional<std::string> t_sigma;
    t->add_option("name", t_name, "Algebra name")->required();
    t->add_option("--sigma", t_sigma, "Exact rational sigma (required for sigma-dependent tables)");

    auto* p = app.add_subcommand("product", "Sticky (or plain) shuffle product of two elements");
    std::string p_name, p_x, p_y;
    bool p_nonsticky = false;
    std::optional<std::string> p_sigma;
    p->add_option("algebra", p_name, "Algebra name")->required();
    p->add_option("x", p_x, "First element, e.g. \"{dX}\"")->required();
    p->add_option("y", p_y, "Second element")->required();
    p->add_flag("--nonsticky", p_nonsticky, "Use the plain shuffle product");
    p->add_option("--sigma", p_sigma, "Exact rational sigma (required for sigma-dependent tables)");

    auto* m = app.add_subcommand("moments", "Moments of the normalized quantum Levy area");
    int m_order = 0;
    std::string m_sigma = "sym", m_a = "0", m_b = "1", m_method = "all";
    bool m_big = false;
    int m_workers = 1;
    if (const char* env = std::getenv("STICKY_WORKERS")) m_workers = std::max(1, std::atoi(env));
    m->add_option("--order", m_order, "Moment order n >= 0")->required();
    m->add_option("--sigma", m_sigma, "sym, inf, or an exact rational >= 1")->capture_default_str();
    m->add_option("--a", m_a, "Interval start (exact rational)")->capture_default_str();
    m->add_option("--b", m_b, "Interval end (exact rational)")->capture_default_str();
    m->add_option("--method", m_method, "hopf, oracle, closed or all")->capture_default_str();
    m->add_flag("--big-oracle", m_big, "Allow the brute-force oracle up to order 8");
    m->add_option("--workers", m_workers, "Worker threads for the oracle (env STICKY_WORKERS)");

    auto* e = app.add_subcommand("euler", "Euler zigzag and Eulerian number tables");
    std::string e_kind;
    int e_n = 0;
    e->add_option("--kind", e_kind, "zigzag, eulerian, polynomial or cyclicdescents")->required();
    e->add_option("--n", e_n, "Table size / row index")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        Output out{parse_format(format), out_path};
        if (t->parsed()) return cmd_table(t_name, t_sigma, out);
        if (p->parsed()) return cmd_product(p_name, p_x, p_y, p_nonsticky, p_sigma, out);
        if (m->parsed())
            return cmd_moments(m_order, m_sigma, m_a, m_b, m_method, m_big, m_workers, digits, out);
        if (e->parsed()) return cmd_euler(e_kind, e_n, out);
    } catch (const CLI::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
