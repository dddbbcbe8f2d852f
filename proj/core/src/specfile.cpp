#include "am/specfile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "am/expr.hpp"
#include "am/zoo.hpp"

namespace am {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw SpecError("spec error at '" + field + "': " + what);
}

const json& require(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where + "." + key, "missing required field");
    return *it;
}

std::vector<Expr> parse_exprs(const json& j, int count, int nvars, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != count)
        fail(where, "expected a list of " + std::to_string(count) + " expressions");
    std::vector<Expr> out;
    for (int i = 0; i < count; ++i) {
        const json& e = j[i];
        if (!e.is_string() && !e.is_number())
            fail(where + "[" + std::to_string(i) + "]", "expected an expression string or number");
        std::string src = e.is_string() ? e.get<std::string>() : e.dump();
        try {
            out.push_back(Expr::parse(src, nvars));
        } catch (const ExprError& err) {
            fail(where + "[" + std::to_string(i) + "]", err.what());
        }
    }
    return out;
}

EvalFn exprs_to_eval(std::vector<Expr> exprs, int nvars) {
    return [exprs, nvars](const JetVec& x, JetVec& out) {
        JetVec xs(x.begin(), x.begin() + nvars);
        for (size_t i = 0; i < exprs.size(); ++i) out[i] = exprs[i].eval(xs);
    };
}

Box parse_domain(const json& j, int dim, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        fail(where, "expected " + std::to_string(dim) + " [lo, hi] pairs");
    Box box;
    for (int i = 0; i < dim; ++i) {
        const json& b = j[i];
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
            fail(where + "[" + std::to_string(i) + "]", "expected [lo, hi]");
        double lo = b[0].get<double>(), hi = b[1].get<double>();
        if (!(lo < hi)) fail(where + "[" + std::to_string(i) + "]", "lo must be < hi");
        box.bounds.push_back({lo, hi});
    }
    return box;
}

Mat parse_matrix(const json& j, int rows, int cols, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) fail(where, "wrong row count");
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
            fail(where + "[" + std::to_string(r) + "]", "wrong column count");
        for (int c = 0; c < cols; ++c) {
            if (!j[r][c].is_number())
                fail(where + "[" + std::to_string(r) + "]", "expected a number");
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

FactorSpec parse_factor(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    if (j.contains("zoo")) {
        std::string name = j["zoo"].get<std::string>();
        for (const FactorSpec& f : zoo::base_factors())
            if (f.name == name) return f;
        fail(where + ".zoo", "unknown zoo factor '" + name + "'");
    }
    FactorSpec f;
    f.name = require(j, "name", where).get<std::string>();
    f.dim = require(j, "dim", where).get<int>();
    if (f.dim < 1 || f.dim > 4) fail(where + ".dim", "factor dimension must be 1..4");
    f.domain = parse_domain(require(j, "domain", where), f.dim, where + ".domain");
    auto metric = parse_exprs(require(j, "metric", where), f.dim * f.dim, f.dim, where + ".metric");
    f.metric = exprs_to_eval(std::move(metric), f.dim);
    auto J = parse_exprs(require(j, "J", where), f.dim * f.dim, f.dim, where + ".J");
    f.J = exprs_to_eval(std::move(J), f.dim);
    f.kahler_scale = require(j, "c", where).get<double>();
    if (!(f.kahler_scale > 0.0)) fail(where + ".c", "Kahler scale must be positive");
    return f;
}

ParsedTarget parse_chart_doc(const json& doc) {
    ParsedTarget t;
    t.name = require(doc, "name", "$").get<std::string>();
    int dim = require(doc, "dim", "$").get<int>();
    if (dim < 1 || dim > 7) fail("$.dim", "dimension must be 1..7");
    Box box = parse_domain(require(doc, "domain", "$"), dim, "$.domain");
    auto metric = parse_exprs(require(doc, "metric", "$"), dim * dim, dim, "$.metric");
    auto fn = exprs_to_eval(std::move(metric), dim);
    t.chart = Chart(dim, box, [fn](const JetVec& x, JetVec& g) { fn(x, g); });
    return t;
}

ParsedTarget parse_bundle_doc(const json& doc) {
    ParsedTarget t;
    t.is_bundle = true;
    BundleSpec& s = t.bundle;
    s.name = require(doc, "name", "$").get<std::string>();
    t.name = s.name;

    const json& factors = require(doc, "factors", "$");
    if (!factors.is_array() || factors.empty()) fail("$.factors", "expected a non-empty list");
    int m = 0;
    for (size_t i = 0; i < factors.size(); ++i) {
        s.factors.push_back(parse_factor(factors[i], "$.factors[" + std::to_string(i) + "]"));
        m += s.factors.back().dim;
    }
    const int nfac = static_cast<int>(s.factors.size());

    const json& bj = require(doc, "b", "$");
    if (!bj.is_array()) fail("$.b", "expected a matrix");
    s.rank = static_cast<int>(bj.size());
    if (s.rank < 1) fail("$.b", "rank must be >= 1");
    s.b = parse_matrix(bj, s.rank, s.rank, "$.b");
    if ((s.b - s.b.transpose()).cwiseAbs().maxCoeff() > 0.0)
        fail("$.b", "matrix b violates the symmetry invariant");

    Mat a = parse_matrix(require(doc, "a", "$"), s.rank, nfac, "$.a");
    s.a.resize(s.rank, nfac);
    for (int r = 0; r < s.rank; ++r)
        for (int c = 0; c < nfac; ++c) {
            if (a(r, c) != std::floor(a(r, c)))
                fail("$.a", "entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " +
                                std::to_string(a(r, c)) +
                                " violates the integer-matrix requirement");
            s.a(r, c) = static_cast<int>(a(r, c));
        }

    const json& pots = require(doc, "potentials", "$");
    if (!pots.is_array() || static_cast<int>(pots.size()) != s.rank)
        fail("$.potentials", "expected one potential 1-form per torus factor");
    for (int i = 0; i < s.rank; ++i) {
        auto comps =
            parse_exprs(pots[i], m, m, "$.potentials[" + std::to_string(i) + "]");
        s.potentials.push_back(exprs_to_eval(std::move(comps), m));
    }
    return t;
}

}  // namespace

ParsedTarget parse_spec_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("spec parse failure: ") + e.what());
    }
    if (!doc.is_object()) throw SpecError("spec error at '$': expected an object");
    std::string schema = require(doc, "schema", "$").get<std::string>();
    if (schema == "amver-chart/1") return parse_chart_doc(doc);
    if (schema == "amver-bundle/1") return parse_bundle_doc(doc);
    throw SpecError("spec error at '$.schema': unknown schema '" + schema + "'");
}

ParsedTarget load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

}  // namespace am
