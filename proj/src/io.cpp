#include "nbv/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace nbv {

const char* const tool_version = "nbv 0.1.0";

namespace {

using nlohmann::json;

const std::vector<std::pair<Method, std::string>>& method_names()
{
    static const std::vector<std::pair<Method, std::string>> names{
        {Method::trace, "trace"},
        {Method::recursion_first, "recursion-first"},
        {Method::recursion_last, "recursion-last"},
        {Method::closed_first, "closed-first"},
        {Method::closed_last, "closed-last"},
        {Method::tensor_split, "tensor-split"},
    };
    return names;
}

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

[[noreturn]] void invalid(const std::string& ptr, const std::string& what) { throw ValidationError(ptr, what); }

const json& field(const json& obj, const std::string& ptr, const std::string& key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        invalid(child(ptr, key), "missing field '" + key + "'");
    return *it;
}

void only_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> keys)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            known = known || it.key() == k;
        if (!known)
            invalid(child(ptr, it.key()), "unknown field '" + it.key() + "'");
    }
}

int integer(const json& j, const std::string& ptr)
{
    if (!j.is_number_integer())
        invalid(ptr, "expected an integer");
    return j.get<int>();
}

const std::string& text(const json& j, const std::string& ptr)
{
    if (!j.is_string())
        invalid(ptr, "expected a string");
    return j.get_ref<const std::string&>();
}

const json& array(const json& j, const std::string& ptr)
{
    if (!j.is_array())
        invalid(ptr, "expected an array");
    return j;
}

Scalar scalar(const json& j, const std::string& ptr)
{
    try {
        return Scalar::parse(text(j, ptr));
    }
    catch (const ValidationError&) {
        throw;
    }
    catch (const std::exception& e) {
        invalid(ptr, e.what());
    }
}

std::vector<int> int_list(const json& j, const std::string& ptr)
{
    std::vector<int> out;
    for (std::size_t i = 0; i < array(j, ptr).size(); ++i)
        out.push_back(integer(j[i], child(ptr, i)));
    return out;
}

Realization::Kind kind_from_string(const std::string& s, const std::string& ptr)
{
    for (auto k : {Realization::Kind::vector, Realization::Kind::wedge_power, Realization::Kind::symmetric_power,
                   Realization::Kind::cyclic_span})
        if (to_string(k) == s)
            return k;
    invalid(ptr, "unknown realization '" + s + "'");
}

Realization parse_realization(const json& j, const std::string& ptr, int n)
{
    Realization r;
    if (j.is_string()) {
        r.kind = kind_from_string(j.get<std::string>(), ptr);
        if (r.kind != Realization::Kind::vector)
            invalid(ptr, "'" + j.get<std::string>() + "' needs the object form with its parameters");
        return r;
    }
    if (!j.is_object())
        invalid(ptr, "expected a realization name or object");
    only_keys(j, ptr, {"kind", "k", "terms"});
    r.kind = kind_from_string(text(field(j, ptr, "kind"), child(ptr, "kind")), child(ptr, "kind"));
    switch (r.kind) {
    case Realization::Kind::vector:
        if (j.contains("k") || j.contains("terms"))
            invalid(ptr, "vector takes no parameters");
        break;
    case Realization::Kind::wedge_power:
    case Realization::Kind::symmetric_power:
        r.k = integer(field(j, ptr, "k"), child(ptr, "k"));
        if (r.k < 1 || (r.kind == Realization::Kind::wedge_power && r.k > n))
            invalid(child(ptr, "k"), "power out of range");
        if (j.contains("terms"))
            invalid(child(ptr, "terms"), "only cyclic_span takes terms");
        break;
    case Realization::Kind::cyclic_span: {
        if (j.contains("k"))
            invalid(child(ptr, "k"), "cyclic_span takes terms, not k");
        const std::string tp = child(ptr, "terms");
        const json& terms = array(field(j, ptr, "terms"), tp);
        if (terms.empty())
            invalid(tp, "cyclic_span needs at least one term");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string ip = child(tp, i);
            if (!terms[i].is_object())
                invalid(ip, "expected {coeff, word}");
            only_keys(terms[i], ip, {"coeff", "word"});
            Scalar c = scalar(field(terms[i], ip, "coeff"), child(ip, "coeff"));
            auto word = int_list(field(terms[i], ip, "word"), child(ip, "word"));
            for (std::size_t w = 0; w < word.size(); ++w)
                if (word[w] < 1 || word[w] > n)
                    invalid(child(child(ip, "word"), w), "letter out of range 1.." + std::to_string(n));
            if (i > 0 && word.size() != r.terms.front().second.size())
                invalid(child(ip, "word"), "all words must have the same length");
            r.terms.emplace_back(c, word);
        }
        break;
    }
    }
    return r;
}

ModuleSpec parse_module(const json& j, const std::string& ptr, int n)
{
    if (!j.is_object())
        invalid(ptr, "expected a module object");
    only_keys(j, ptr, {"realization", "x", "weight"});
    ModuleSpec m;
    m.n = n;
    m.realization = parse_realization(field(j, ptr, "realization"), child(ptr, "realization"), n);
    m.x = scalar(field(j, ptr, "x"), child(ptr, "x"));
    if (j.contains("weight")) {
        m.weight = int_list(j["weight"], child(ptr, "weight"));
        if (static_cast<int>(m.weight.size()) != n)
            invalid(child(ptr, "weight"), "weight must have length n");
    }
    else if (m.realization.kind == Realization::Kind::cyclic_span) {
        invalid(child(ptr, "weight"), "cyclic_span needs a declared weight");
    }
    return m;
}

json scalars(const std::vector<Scalar>& v)
{
    json j = json::array();
    for (const auto& s : v)
        j.push_back(s.str());
    return j;
}

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

json manifest(const JobSpec& job)
{
    return json{{"fingerprint", fingerprint(job)}, {"tool_version", tool_version}};
}

} // namespace

std::string to_string(Method m)
{
    for (const auto& [k, name] : method_names())
        if (k == m)
            return name;
    return "?";
}

Method method_from_string(const std::string& s)
{
    for (const auto& [k, name] : method_names())
        if (name == s)
            return k;
    throw ValidationError("/method", "unknown method '" + s + "'");
}

JobSpec parse_job(const json& j, bool modules_optional)
{
    if (!j.is_object())
        invalid("", "a job must be a JSON object");
    only_keys(j, "", {"case", "n", "q", "modules", "xi", "t", "method"});
    JobSpec job;
    try {
        job.flavor.kind = case_from_string(text(field(j, "", "case"), "/case"));
    }
    catch (const ValidationError&) {
        throw;
    }
    catch (const std::exception& e) {
        invalid("/case", e.what());
    }
    job.n = integer(field(j, "", "n"), "/n");
    if (job.n < 2)
        invalid("/n", "rank must be at least 2");
    if (job.flavor.trig()) {
        job.flavor.q = scalar(field(j, "", "q"), "/q");
        try {
            check_q(job.flavor.q);
        }
        catch (const std::exception& e) {
            invalid("/q", e.what());
        }
    }
    else if (j.contains("q")) {
        invalid("/q", "q is only used in the trigonometric case");
    }

    if (j.contains("modules")) {
        const json& mods = array(j["modules"], "/modules");
        for (std::size_t i = 0; i < mods.size(); ++i)
            job.modules.push_back(parse_module(mods[i], child("/modules", i), job.n));
    }
    if (job.modules.empty() && !modules_optional)
        invalid("/modules", "at least one module is required");

    job.xi = int_list(field(j, "", "xi"), "/xi");
    if (static_cast<int>(job.xi.size()) != job.n - 1)
        invalid("/xi", "xi must have n - 1 entries");
    for (std::size_t a = 0; a < job.xi.size(); ++a)
        if (job.xi[a] < 0)
            invalid(child("/xi", a), "xi entries must be nonnegative");

    const json& t = array(field(j, "", "t"), "/t");
    if (t.size() != job.xi.size())
        invalid("/t", "t must have one list per level of xi");
    for (std::size_t a = 0; a < t.size(); ++a) {
        const std::string lp = child("/t", a);
        const json& level = array(t[a], lp);
        if (static_cast<int>(level.size()) != job.xi[a])
            invalid(lp, "level " + std::to_string(a + 1) + " needs " + std::to_string(job.xi[a]) + " variables");
        job.t.emplace_back();
        for (std::size_t i = 0; i < level.size(); ++i)
            job.t.back().push_back(scalar(level[i], child(lp, i)));
    }

    if (j.contains("method"))
        job.method = method_from_string(text(j["method"], "/method"));

    // method preconditions
    switch (job.method) {
    case Method::trace:
        break;
    case Method::recursion_first:
    case Method::recursion_last:
    case Method::closed_first:
    case Method::closed_last:
        if (job.modules.size() != 1)
            invalid("/modules", to_string(job.method) + " works on a single module");
        break;
    case Method::tensor_split:
        if (job.modules.size() < 2)
            invalid("/modules", "tensor-split needs at least two modules");
        break;
    }
    return job;
}

json serialize(const ModuleSpec& m)
{
    json r{{"kind", to_string(m.realization.kind)}};
    if (m.realization.kind == Realization::Kind::wedge_power || m.realization.kind == Realization::Kind::symmetric_power)
        r["k"] = m.realization.k;
    if (m.realization.kind == Realization::Kind::cyclic_span) {
        r["terms"] = json::array();
        for (const auto& [c, w] : m.realization.terms)
            r["terms"].push_back(json{{"coeff", c.str()}, {"word", w}});
    }
    json j{{"realization", r}, {"x", m.x.str()}};
    if (!m.weight.empty())
        j["weight"] = m.weight;
    return j;
}

json serialize(const JobSpec& job)
{
    json j{{"case", to_string(job.flavor.kind)}, {"n", job.n}, {"xi", job.xi}, {"method", to_string(job.method)}};
    if (job.flavor.trig())
        j["q"] = job.flavor.q.str();
    j["modules"] = json::array();
    for (const auto& m : job.modules)
        j["modules"].push_back(serialize(m));
    j["t"] = json::array();
    for (const auto& level : job.t)
        j["t"].push_back(scalars(level));
    return j;
}

std::string fingerprint(const JobSpec& job)
{
    json j = serialize(job);
    j.erase("method");
    return sha256_hex(j.dump());
}

RepPtr assemble(const JobSpec& job)
{
    std::vector<RepPtr> factors;
    for (const auto& m : job.modules)
        factors.push_back(make_eval(build_module(m, job.flavor), m.x));
    return make_assembly(factors);
}

json compute(const JobSpec& job)
{
    RepPtr rep = assemble(job);
    Composition xi{job.xi};
    preflight(job.flavor, rep.get(), xi, job.t);
    Vec v;
    switch (job.method) {
    case Method::trace:
        v = weight_vector(*rep, xi, job.t);
        break;
    case Method::tensor_split: {
        std::vector<RepPtr> factors;
        for (const auto& m : job.modules)
            factors.push_back(make_eval(build_module(m, job.flavor), m.x));
        v = tensor_split(factors, xi, job.t);
        break;
    }
    default: {
        EvalData ev{build_module(job.modules.front(), job.flavor), job.modules.front().x};
        switch (job.method) {
        case Method::recursion_first:
            v = recursion_theorem(ev, xi, job.t, Direction::first);
            break;
        case Method::recursion_last:
            v = recursion_theorem(ev, xi, job.t, Direction::last);
            break;
        case Method::closed_first:
            v = closed_form(ev, xi, job.t, Closed::bc1);
            break;
        default:
            v = closed_form(ev, xi, job.t, Closed::bcN);
            break;
        }
    }
    }
    check_weight(*rep, xi, v);
    return json{{"basis", rep->basis_labels()},
                {"coordinates", scalars(v)},
                {"weight", result_weight(*rep, xi)},
                {"method", to_string(job.method)},
                {"manifest", manifest(job)}};
}

json explain(const JobSpec& job)
{
    if (job.method != Method::trace)
        invalid("/method", "explain expands the trace only");
    Composition xi{job.xi};
    if (xi.total() > 3)
        invalid("/xi", "size cap exceeded: explain handles |xi| <= 3");
    RepPtr rep = job.modules.empty() ? nullptr : assemble(job);
    preflight(job.flavor, rep.get(), xi, job.t);
    auto monomials = trace_monomials(job.flavor, job.n, xi, job.t, true);
    json list = json::array();
    for (const auto& m : monomials) {
        json factors = json::array();
        std::size_t p = 0;
        for (int a = 1; a <= xi.levels(); ++a)
            for (int i = 1; i <= xi[a]; ++i, ++p)
                factors.push_back(json{{"a", m.ab[p].first}, {"b", m.ab[p].second}, {"variable", var_name(a, i)}});
        list.push_back(json{{"monomial", monomial_label(job.flavor, xi, m)},
                            {"factors", factors},
                            {"coefficient", m.coeff.str()}});
    }
    return json{{"case", to_string(job.flavor.kind)},
                {"n", job.n},
                {"xi", job.xi},
                {"monomials", list},
                {"manifest", manifest(job)}};
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    }
    catch (const json::parse_error& e) {
        throw ValidationError("", std::string("malformed JSON: ") + e.what());
    }
}

void write_json(const std::string& path, const json& j)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

} // namespace nbv
