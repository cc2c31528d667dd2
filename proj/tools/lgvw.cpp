#include "lgvw/lgvw.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using Json = nlohmann::ordered_json;
using namespace lgvw;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { kPass = 0, kFailed = 1, kUsage = 2, kInternal = 3 };

struct Check {
    Check() = default;
    Check(std::string n, std::string s) : name(std::move(n)), subject(std::move(s)) {}

    std::string name;
    std::string subject;
    std::string verdict = "pass";  // pass, fail, skipped
    std::string reason;
    Json data = Json::object();
    std::vector<std::string> text;

    void require(bool ok, const std::string& why)
    {
        if (ok) return;
        verdict = "fail";
        reason += (reason.empty() ? "" : "; ") + why;
    }
    void skip(const std::string& why)
    {
        verdict = "skipped";
        reason = why;
    }
};

struct Options {
    std::string pair;
    std::string poly;
    std::string group;
    int kmax = 3;
    int truncation = 8;
    std::string format = "text";
    std::string out;
    std::string config;
    std::vector<int> degrees;
    int max_exp = 12;
    int max_rank = 10;
    bool timing = false;
    std::vector<std::string> checks;
};

std::string rs(const Rational& r) { return r.get_str(); }

Json phases(const PhaseVector& g)
{
    Json a = Json::array();
    for (const auto& p : g.phases()) a.push_back(rs(p));
    return a;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Worker pool over independent tasks; results are stored by index so the
// output order does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LGVW_WORKERS")) {
        int v = 0;
        try {
            v = std::stoi(env);
        } catch (const std::exception&) {
        }
        if (v < 1) throw ConfigError(std::string("LGVW_WORKERS must be a positive integer, got '") + env + "'");
        workers = static_cast<std::size_t>(v);
    }
    workers = std::min(workers, std::max<std::size_t>(n, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// ---- pair checks ----

Check check_analyze(const ResolvedPair& p)
{
    Check c{"analyze", p.id};
    const WeightSystem q = weight_system(p.w);
    const Rational chat = central_charge(q);
    const bool cy = q.sum() == 1;
    const DiagonalGroup gmax = maximal_group(p.w);
    const PhaseVector j = exponential_grading_element(q);
    const bool admissible = is_admissible(p.group, p.w);
    std::string atoms;
    try {
        for (const auto& a : classify_invertible(p.w).atoms) atoms += (atoms.empty() ? "" : " + ") + a.to_string();
    } catch (const Error& e) {
        atoms = "not invertible";
    }
    Json w = Json::array();
    std::string ws;
    for (std::size_t i = 0; i < q.size(); ++i) {
        w.push_back(rs(q[i]));
        ws += (i ? ", " : "") + rs(q[i]);
    }
    c.data["polynomial"] = p.w.to_string();
    c.data["weights"] = w;
    c.data["chat"] = rs(chat);
    c.data["calabi_yau"] = cy;
    c.data["atoms"] = atoms;
    c.data["order_G_W"] = gmax.order();
    c.data["order_G"] = p.group.order();
    c.data["J"] = phases(j);
    c.data["admissible"] = admissible;
    c.text.push_back("W = " + p.w.to_string());
    c.text.push_back("weights (" + ws + "), chat = " + rs(chat) + (cy ? ", Calabi-Yau" : ", not Calabi-Yau"));
    c.text.push_back("atoms: " + atoms);
    c.text.push_back("|G_W| = " + std::to_string(gmax.order()) + ", |G| = " + std::to_string(p.group.order()) +
                     ", J = " + j.to_string() + ", admissible: " + yes_no(admissible));
    c.require(admissible, "G does not contain J");
    return c;
}

Check check_state_space(const StateSpace& s, const std::string& id)
{
    Check c{"state-space", id};
    Json rows = Json::array();
    c.text.push_back(pad("element", 28) + pad("(mu+, mu-)", 16) + pad("parity", 8) + "deg_C");
    for (const auto& e : s.basis) {
        rows.push_back({{"element", e.label},
                        {"sector", phases(e.gamma)},
                        {"mu_plus", rs(e.mu_plus)},
                        {"mu_minus", rs(e.mu_minus)},
                        {"parity", e.parity},
                        {"deg_c", rs(e.deg_c)}});
        c.text.push_back(pad(e.label, 28) + pad("(" + rs(e.mu_plus) + ", " + rs(e.mu_minus) + ")", 16) +
                         pad(std::to_string(e.parity), 8) + rs(e.deg_c));
    }
    const SupertraceReport st = check_supertrace_formula(s);
    const PoincareCheck pc = check_poincare(s);
    c.data["rank"] = s.rank();
    c.data["chi"] = st.chi;
    c.data["chat"] = rs(s.chat);
    c.data["basis"] = rows;
    c.data["supertrace"] = {{"lhs", rs(st.lhs)}, {"rhs", rs(st.rhs)}, {"holds", st.holds}};
    c.data["poincare"] = {{"sectors", pc.sectors},
                          {"sector_product_formula", pc.sector_mismatches.empty()},
                          {"averaged_equals_census", pc.averaged_equals_census},
                          {"series", pc.census.to_string()},
                          {"chi_limit", pc.chi_limit},
                          {"str_limit", pc.str_limit}};
    c.text.push_back("rank " + std::to_string(s.rank()) + ", chi = " + std::to_string(st.chi));
    c.text.push_back("Str(theta^2 - 1/4) = " + rs(st.lhs) + ", (chat - 3)/12 chi = " + rs(st.rhs));
    c.text.push_back("Poincare series " + pc.census.to_string());
    c.text.push_back("per-sector product formula: " + yes_no(pc.sector_mismatches.empty()) +
                     ", averaged = census: " + yes_no(pc.averaged_equals_census) +
                     ", y->1 limits: " + yes_no(pc.chi_limit && pc.str_limit));
    c.require(st.holds, "supertrace formula fails");
    c.require(pc.sector_mismatches.empty(), "sector product formula fails");
    c.require(pc.averaged_equals_census, "group-averaged series differs from the basis census");
    c.require(pc.chi_limit && pc.str_limit, "y -> 1 limits differ from chi or Str(theta^2)");
    return c;
}

Check check_virasoro(const StateSpace& s, const std::string& id, const Options& o)
{
    Check c{"virasoro", id};
    const GradedSpace g = graded_space(s);
    const RelationReport rep = check_virasoro_relations(g, o.kmax, o.truncation);
    Json failed = Json::array();
    for (const auto& r : rep.results)
        if (!r.holds) failed.push_back({r.m, r.n});
    const bool l0 = l0_from_grading(g, o.truncation) == virasoro_operator(g, 0, o.truncation);
    c.data["kmax"] = o.kmax;
    c.data["truncation"] = o.truncation;
    c.data["relations_checked"] = rep.results.size();
    c.data["failed"] = failed;
    c.data["l0_equals_grading"] = l0;
    c.text.push_back("[L_m, L_n] = (m - n) L_{m+n} for -1 <= m, n <= " + std::to_string(o.kmax) + " at M = " +
                     std::to_string(o.truncation) + ": " + std::to_string(rep.results.size() - failed.size()) + "/" +
                     std::to_string(rep.results.size()) + " hold");
    c.text.push_back("L_0 equals the grading operator form: " + yes_no(l0));
    c.require(rep.all_hold(), "relations fail at " + failed.dump());
    c.require(l0, "L_0 differs from the grading operator form");
    return c;
}

Check check_quantize(const StateSpace& s, const std::string& id, const Options& o)
{
    Check c{"quantize", id};
    const GradedSpace g = graded_space(s);
    Json ks = Json::array();
    for (int k = -1; k <= o.kmax; ++k) {
        const QuantizationCheck r = check_quantization_identity(g, k, o.truncation);
        const bool operator_part = r.defect.is_zero();
        std::string status;
        bool ok;
        if (k == 0) {
            ok = operator_part && (r.matches_signed || r.matches_unsigned);
            status = r.matches_signed ? "signed Str" : r.matches_unsigned ? "unsigned trace" : "no match";
        } else {
            ok = r.matches;
            status = ok ? "exact" : "differs";
        }
        ks.push_back({{"k", k},
                      {"operator_part", operator_part},
                      {"constant_offset", rs(r.constant_offset)},
                      {"signed_quarter", rs(r.signed_quarter)},
                      {"unsigned_quarter", rs(r.unsigned_quarter)},
                      {"displayed_form", r.displayed_matches},
                      {"holds", ok}});
        c.text.push_back("k = " + std::to_string(k) + ": shifted quantized operator vs L_k: " + status +
                         (k == 0 ? " (offset " + rs(r.constant_offset) + ")" : ""));
        c.require(ok, "quantization identity fails at k = " + std::to_string(k));
    }
    const BracketDefect b = bracket_defect(g, 1, -1, o.truncation);
    const bool cocycle_ok = b.matches_cocycle() && b.constant == -g.supertrace() / 2;
    c.data["identities"] = ks;
    c.data["bracket_defect"] = {{"scalar", b.is_scalar()},
                                {"constant", rs(b.constant)},
                                {"cocycle", rs(b.cocycle_value)},
                                {"minus_half_str", rs(-g.supertrace() / 2)},
                                {"holds", cocycle_ok}};
    c.text.push_back("[L_1^, L_-1^] - 2 L_0^ = " + rs(b.constant) + ", cocycle " + rs(b.cocycle_value) +
                     ", -Str/2 = " + rs(-g.supertrace() / 2));
    c.require(cocycle_ok, "bracket defect differs from the cocycle");
    return c;
}

bool is_invertible(const Polynomial& w)
{
    try {
        classify_invertible(w);
        return true;
    } catch (const Error&) {
        return false;
    }
}

Check check_mirror(const StateSpace& s, const std::string& id)
{
    Check c{"mirror", id};
    if (!is_invertible(s.w)) {
        c.skip("W is not invertible");
        return c;
    }
    const MirrorCorrespondence m = krawitz_map(s);
    const MirrorReport r = verify_mirror(m);
    Json rows = Json::array();
    c.text.push_back("W^T = " + m.w_b.to_string() + ", |G^T| = " + std::to_string(m.g_b.order()));
    c.text.push_back(pad("A-element", 26) + pad("(mu+, mu-)", 14) + pad("par", 5) + pad("B-element", 26) +
                     pad("(mu+B, mu-B)", 14) + "parB");
    for (std::size_t k = 0; k < m.source.size(); ++k) {
        const auto& a = m.source[k];
        const auto& b = m.image[k];
        rows.push_back({{"a", a.label},
                        {"a_grading", {rs(a.mu_plus), rs(a.mu_minus)}},
                        {"a_parity", a.parity},
                        {"b", b.label},
                        {"b_sector", phases(b.gamma)},
                        {"b_grading", {rs(b.mu_plus_b), rs(b.mu_minus_b)}},
                        {"b_parity", b.parity_b}});
        c.text.push_back(pad(a.label, 26) + pad("(" + rs(a.mu_plus) + ", " + rs(a.mu_minus) + ")", 14) +
                         pad(std::to_string(a.parity), 5) + pad(b.label, 26) +
                         pad("(" + rs(b.mu_plus_b) + ", " + rs(b.mu_minus_b) + ")", 14) + std::to_string(b.parity_b));
    }
    c.data["transpose"] = m.w_b.to_string();
    c.data["order_G_T"] = m.g_b.order();
    c.data["rank_a"] = r.rank_a;
    c.data["rank_b"] = r.rank_b;
    c.data["chat_a"] = rs(r.chat_a);
    c.data["chat_b"] = rs(r.chat_b);
    c.data["bijective"] = r.bijective;
    c.data["bigrading_preserved"] = r.bigrading_preserved;
    c.data["parity_preserved"] = r.parity_preserved;
    c.data["chi_equal"] = r.chi_equal;
    c.data["supertrace_equal"] = r.supertrace_equal;
    c.data["involution"] = mirror_is_involution(s.group, s.w);
    c.data["table"] = rows;
    c.text.push_back("ranks " + std::to_string(r.rank_a) + " = " + std::to_string(r.rank_b) + ", chat " +
                     rs(r.chat_a) + " = " + rs(r.chat_b) + ", bijective: " + yes_no(r.bijective) +
                     ", gradings: " + yes_no(r.bigrading_preserved) + ", parity: " + yes_no(r.parity_preserved));
    for (const auto& f : r.failures) c.require(false, f);
    c.require(c.data["involution"].get<bool>(), "(G^T)^T differs from G");
    return c;
}

Check check_degree(const StateSpace& s, const std::string& id)
{
    Check c{"degree-criterion", id};
    const DegreeCriterion d = degree_criterion(s);
    if (!d.applicable) {
        c.skip(d.skip_reason);
        return c;
    }
    Json narrow = Json::array();
    for (const auto& g : d.age1_narrow) narrow.push_back(phases(g));
    c.data["elements_checked"] = d.elements_checked;
    c.data["min_degree_outside_J"] = rs(d.min_degree_outside_j);
    c.data["violations"] = d.violations;
    c.data["age1_narrow"] = narrow;
    c.data["age1_narrow_is_J"] = d.age1_narrow_is_j;
    c.data["age1_one_fixed_sectors"] = d.age1_one_fixed;
    c.data["age1_one_fixed_elements"] = d.age1_one_fixed_elements;
    c.text.push_back(std::to_string(d.elements_checked) + " elements outside the J-sector, min deg_C = " +
                     rs(d.min_degree_outside_j));
    c.text.push_back("age-1 narrow sectors: " + std::to_string(d.age1_narrow.size()) +
                     ", all equal J: " + yes_no(d.age1_narrow_is_j));
    c.text.push_back("age-1 sectors with one fixed variable: " + std::to_string(d.age1_one_fixed) + ", carrying " +
                     std::to_string(d.age1_one_fixed_elements) + " basis elements");
    c.require(d.degrees_hold, "deg_C < 1 outside the J-sector");
    c.require(d.age1_narrow_is_j, "an age-1 narrow sector differs from J");
    c.require(d.age1_one_fixed_elements == 0, "an age-1 sector with one fixed variable carries basis elements");
    return c;
}

// ---- global checks ----

Check check_semisimple(int d)
{
    Check c{"semisimple", "x1^" + std::to_string(d) + "+x2^" + std::to_string(d) + "/J"};
    const fermat::SemisimplicityReport r = fermat::det_euler(d);
    c.data["d"] = d;
    c.data["special_case"] = r.special_case;
    if (r.special_case) {
        c.data["reason"] = r.reason;
        c.text.push_back(r.reason);
    } else {
        Json rows = Json::array();
        for (const auto& row : r.matrix) {
            Json jr = Json::array();
            for (const auto& x : row) jr.push_back(fermat::sym_to_string(x));
            rows.push_back(jr);
        }
        c.data["matrix"] = rows;
        c.data["determinant"] = fermat::sym_to_string(r.determinant);
        c.data["closed_form"] = fermat::sym_to_string(r.closed_form);
        c.text.push_back("det E(t)* = " + fermat::sym_to_string(r.determinant));
        c.text.push_back("closed form (-d)^d (d-2)^(d-2) C^(2d-2) t^(4d-4) = " + fermat::sym_to_string(r.closed_form));
    }
    c.data["matches"] = r.matches;
    c.data["semisimple"] = r.semisimple;
    c.require(r.matches, "determinant differs from the closed form");
    c.require(r.semisimple, "not semisimple");
    if (d >= 3) {
        const auto census = fermat::census_nonvanishing(d);
        const bool fam = census == fermat::nonvanishing_families(d);
        std::map<int, int> per_m;
        for (const auto& e : census) ++per_m[e.m];
        Json counts = Json::object();
        std::string line;
        for (int m = 0; m <= 6; ++m) {
            counts[std::to_string(m)] = per_m[m];
            line += (m ? ", " : "") + std::string("m=") + std::to_string(m) + ": " + std::to_string(per_m[m]);
        }
        c.data["nonvanishing_counts"] = counts;
        c.data["nonvanishing_matches_families"] = fam;
        c.text.push_back("nonvanishing census " + line + "; three families: " + yes_no(fam));
        c.require(fam, "nonvanishing census differs from the three families");
    }
    return c;
}

Check check_cy_census(int max_exp)
{
    Check c{"cy-census", "3 variables, exponents <= " + std::to_string(max_exp)};
    const CensusComparison r = compare_cy3_census(max_exp);
    Json entries = Json::array();
    c.text.push_back(pad("column", 8) + pad("row", 8) + pad("polynomial", 26) + "atoms");
    for (const auto& e : r.census) {
        entries.push_back({{"column", e.column}, {"row", e.row}, {"polynomial", e.polynomial}, {"atoms", e.atoms}});
        c.text.push_back(pad(e.column, 8) + pad(e.row, 8) + pad(e.polynomial, 26) + e.atoms);
    }
    Json cells = Json::object();
    for (const auto& col : {"E6", "E7", "E8"}) {
        Json jc = Json::object();
        std::string line = std::string(col) + ":";
        for (const auto& row : {"Fermat", "Chain", "Loop", "Mixed"}) {
            int n = 0;
            auto it = r.cells.find(col);
            if (it != r.cells.end() && it->second.count(row)) n = it->second.at(row);
            jc[row] = n;
            line += std::string(" ") + row + " " + std::to_string(n);
        }
        cells[col] = jc;
        c.text.push_back(line);
    }
    c.data["max_exponent"] = max_exp;
    c.data["entries"] = entries;
    c.data["cells"] = cells;
    c.data["missing_from_census"] = r.missing_from_census;
    c.data["missing_from_table"] = r.missing_from_table;
    c.data["misplaced"] = r.misplaced;
    c.text.push_back(std::to_string(r.census.size()) + " polynomials; matches the table: " + yes_no(r.matches()));
    c.require(r.matches(), "census differs from the table");
    return c;
}

Check check_elliptic(const Options& o)
{
    Check c{"elliptic", "cubic/J"};
    const elliptic::EllipticReport r = elliptic::run_checks(o.kmax, o.truncation);
    Json ident = Json::array();
    for (const auto& [k, ok] : r.identification) ident.push_back({{"k", k}, {"holds", ok}});
    Json comm = Json::array();
    for (const auto& x : r.commutators)
        comm.push_back({{"k", x.k},
                        {"D", x.d_vanishes},
                        {"Dbar", x.dbar_vanishes},
                        {"D_s_swapped", x.swapped_d_vanishes},
                        {"D_mutated", x.mutated_d_vanishes},
                        {"Dbar_mutated", x.mutated_dbar_vanishes}});
    c.data["identification"] = ident;
    c.data["connection_invariant"] = r.connection_invariant;
    c.data["log_s_quantization"] = r.log_s_matches;
    c.data["commutators"] = comm;
    c.data["control_detected"] = r.control_detected();
    c.text.push_back("L_k = Psi(L_k^E) for -1 <= k <= " + std::to_string(o.kmax) + ": " + yes_no(r.identification_holds()));
    c.text.push_back("exp(q ad log S) fixes d_z + z^-1 theta: " + yes_no(r.connection_invariant));
    c.text.push_back("quantized log S equals the displayed operator: " + yes_no(r.log_s_matches));
    c.text.push_back("[(log S)^, D_k] = [(log S)^, Dbar_k] = 0: " + yes_no(r.commutators_vanish()));
    c.text.push_back("negative control (t^0 creators of D_k moved to t^1) detected: " + yes_no(r.control_detected()));
    c.require(r.identification_holds(), "operator identification fails");
    c.require(r.connection_invariant, "connection not invariant");
    c.require(r.log_s_matches, "quantized log S differs");
    c.require(r.commutators_vanish(), "commutators do not vanish");
    c.require(r.control_detected(), "negative control not detected");
    return c;
}

// ---- dispatch ----

const std::vector<std::string> kPairChecks = {"analyze", "state-space", "virasoro", "quantize", "mirror",
                                              "degree-criterion"};

std::vector<Check> run_pair_checks(const ResolvedPair& p, const std::vector<std::string>& names, const Options& o,
                                   bool guard_rank)
{
    std::vector<Check> out;
    std::optional<StateSpace> s;
    auto space = [&]() -> const StateSpace& {
        if (!s) s = build_state_space(p.w, p.group);
        return *s;
    };
    for (const auto& n : names) {
        if (n == "analyze") {
            out.push_back(check_analyze(p));
            continue;
        }
        if (!is_admissible(p.group, p.w)) {
            Check c{n, p.id};
            c.skip("pair is not admissible");
            out.push_back(c);
            continue;
        }
        if (n == "state-space") out.push_back(check_state_space(space(), p.id));
        else if (n == "mirror") out.push_back(check_mirror(space(), p.id));
        else if (n == "degree-criterion") out.push_back(check_degree(space(), p.id));
        else if (n == "virasoro" || n == "quantize") {
            if (guard_rank && static_cast<int>(space().rank()) > o.max_rank) {
                Check c{n, p.id};
                c.skip("rank " + std::to_string(space().rank()) + " exceeds " + std::to_string(o.max_rank));
                out.push_back(c);
            } else {
                out.push_back(n == "virasoro" ? check_virasoro(space(), p.id, o) : check_quantize(space(), p.id, o));
            }
        } else {
            throw ConfigError("unknown check '" + n + "'");
        }
    }
    return out;
}

ResolvedPair resolve(const Options& o)
{
    if (!o.pair.empty() && !o.poly.empty()) throw ConfigError("give either --pair or --poly, not both");
    const std::string src = o.pair.empty() ? o.poly : o.pair;
    if (src.empty()) throw ConfigError("this command needs --pair NAME or --poly STR");
    return resolve_pair(src, o.group);
}

bool has_pair(const Options& o) { return !o.pair.empty() || !o.poly.empty(); }

// d for a pair equal to x1^d + x2^d.
int fermat_degree(const ResolvedPair& p)
{
    for (int d = 2; d <= 64; ++d)
        if (p.w == parse_polynomial("x1^" + std::to_string(d) + "+x2^" + std::to_string(d))) return d;
    throw ConfigError("semisimple applies to x1^d + x2^d only, got " + p.w.to_string());
}

std::vector<Check> run_command(const std::string& cmd, const Options& o)
{
    std::vector<Check> out;
    if (cmd == "analyze" || cmd == "state-space" || cmd == "virasoro" || cmd == "quantize" || cmd == "mirror" ||
        cmd == "degree-criterion")
        return run_pair_checks(resolve(o), {cmd}, o, false);
    if (cmd == "semisimple") {
        std::vector<int> ds = o.degrees;
        if (has_pair(o)) ds = {fermat_degree(resolve(o))};
        if (ds.empty())
            for (int d = 2; d <= 8; ++d) ds.push_back(d);
        out.resize(ds.size());
        parallel_for(ds.size(), [&](std::size_t i) { out[i] = check_semisimple(ds[i]); });
        return out;
    }
    if (cmd == "cy-census") return {check_cy_census(o.max_exp)};
    if (cmd == "elliptic") return {check_elliptic(o)};
    if (cmd == "all") {
        if (has_pair(o)) return run_pair_checks(resolve(o), o.checks.empty() ? kPairChecks : o.checks, o, false);
        // Catalog sweep plus the global checks.
        std::vector<std::function<std::vector<Check>()>> tasks;
        for (const auto& cp : catalog_pairs())
            tasks.push_back([cp, &o] {
                ResolvedPair p = resolve_pair(cp.polynomial, cp.group);
                p.id = cp.id;
                return run_pair_checks(p, {"state-space", "virasoro", "quantize", "mirror"}, o, true);
            });
        for (const auto& name : {"quintic", "sextic4"})
            tasks.push_back([name, &o] { return run_pair_checks(resolve_pair(name), {"degree-criterion"}, o, false); });
        for (int d = 2; d <= 8; ++d) tasks.push_back([d] { return std::vector<Check>{check_semisimple(d)}; });
        tasks.push_back([&o] { return std::vector<Check>{check_cy_census(o.max_exp)}; });
        tasks.push_back([&o] { return std::vector<Check>{check_elliptic(o)}; });
        std::vector<std::vector<Check>> results(tasks.size());
        parallel_for(tasks.size(), [&](std::size_t i) { results[i] = tasks[i](); });
        for (auto& r : results)
            for (auto& c : r) out.push_back(std::move(c));
        return out;
    }
    throw ConfigError("unknown command '" + cmd + "'");
}

std::string summary_verdict(const std::vector<Check>& checks)
{
    for (const auto& c : checks)
        if (c.verdict == "fail") return "fail";
    return "pass";
}

Json to_json(const std::string& cmd, const std::vector<Check>& checks, const Options& o, double seconds)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = "lgvw";
    j["command"] = cmd;
    Json params;
    if (has_pair(o)) params["pair"] = o.pair.empty() ? o.poly : o.pair;
    if (!o.group.empty()) params["group"] = o.group;
    params["kmax"] = o.kmax;
    params["truncation"] = o.truncation;
    j["parameters"] = params;
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json jc;
        jc["check"] = c.name;
        jc["subject"] = c.subject;
        jc["verdict"] = c.verdict;
        if (!c.reason.empty()) jc["reason"] = c.reason;
        jc["data"] = c.data;
        arr.push_back(jc);
    }
    j["checks"] = arr;
    j["verdict"] = summary_verdict(checks);
    if (o.timing) j["timing_seconds"] = seconds;
    return j;
}

std::string to_text(const std::string& cmd, const std::vector<Check>& checks, const Options& o, double seconds)
{
    std::ostringstream s;
    for (const auto& c : checks) {
        std::string tag = c.verdict == "pass" ? "PASS" : c.verdict == "fail" ? "FAIL" : "SKIP";
        s << "[" << tag << "] " << c.name << " " << c.subject;
        if (!c.reason.empty()) s << " (" << c.reason << ")";
        s << "\n";
        if (cmd != "all")
            for (const auto& line : c.text) s << "    " << line << "\n";
    }
    std::size_t pass = 0, fail = 0, skip = 0;
    for (const auto& c : checks) (c.verdict == "pass" ? pass : c.verdict == "fail" ? fail : skip)++;
    s << "verdict: " << summary_verdict(checks) << " (" << pass << " passed, " << fail << " failed, " << skip
      << " skipped)\n";
    if (o.timing) s << "time: " << seconds << " s\n";
    return s.str();
}

void load_config(const std::string& path, Options& o, const CLI::App& sub)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config " + path + " is not valid JSON at byte " + std::to_string(e.byte));
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        const bool cli = key == "polynomial"   ? sub.count("--poly") + sub.count("--pair") > 0
                         : key == "group"      ? sub.count("--group") > 0
                         : key == "kmax"       ? sub.count("--kmax") > 0
                         : key == "truncation" ? sub.count("-M") > 0
                                               : false;
        try {
            if (key == "polynomial") {
                if (!cli) o.poly = v.get<std::string>();
            } else if (key == "group") {
                if (!cli) o.group = v.get<std::string>();
            } else if (key == "kmax") {
                if (!cli) o.kmax = v.get<int>();
            } else if (key == "truncation") {
                if (!cli) o.truncation = v.get<int>();
            } else if (key == "checks") {
                o.checks = v.get<std::vector<std::string>>();
                for (const auto& c : o.checks)
                    if (std::find(kPairChecks.begin(), kPairChecks.end(), c) == kPairChecks.end())
                        throw ConfigError("unknown check '" + c + "' in config");
            } else {
                throw ConfigError("unknown config field '" + key + "'");
            }
        } catch (const Json::type_error&) {
            throw ConfigError("config field '" + key + "' has the wrong type");
        }
    }
}

void validate(const Options& o)
{
    if (o.kmax < -1) throw ConfigError("kmax must be at least -1");
    if (o.truncation < 2 * o.kmax + 2) throw ConfigError("truncation M must be at least 2 kmax + 2");
    if (o.format != "text" && o.format != "json") throw ConfigError("format must be text or json");
    for (int d : o.degrees)
        if (d < 2) throw ConfigError("--d must be at least 2");
}

void print_parse_error(const ParseError& e, const Options& o)
{
    const std::string src = o.pair.empty() ? o.poly : o.pair;
    std::cerr << "lgvw: " << e.what() << "\n";
    std::string text = src;
    for (const auto& c : catalog_polynomials())
        if (c.name == src) text = c.polynomial;
    if (!text.empty()) std::cerr << "  " << text << "\n  " << std::string(e.position(), ' ') << "^\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Landau-Ginzburg Virasoro workbench"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"analyze", "weights, central charge, atoms and group data of a pair"},
        {"state-space", "basis, bigradings, supertrace formula and Poincare series"},
        {"virasoro", "Virasoro commutation relations on the truncated Weyl algebra"},
        {"quantize", "quantization identity and cocycle"},
        {"mirror", "Krawitz map against the B-model of the transpose pair"},
        {"semisimple", "quantum Euler determinant and nonvanishing census for x1^d + x2^d"},
        {"cy-census", "enumeration of invertible CY polynomials in three variables"},
        {"degree-criterion", "deg_C >= 1 outside the J-sector for CY pairs with G in SL"},
        {"elliptic", "elliptic Virasoro identification and the D_k commutators"},
        {"all", "every check for one pair, or the catalog sweep without --pair"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--pair", o.pair, "catalog name or polynomial");
        sub->add_option("--poly", o.poly, "polynomial, e.g. x1^3+x2^3+x3^3");
        sub->add_option("--group", o.group, "J, max, SL, 'a/b,c/d;...' or JSON generator list");
        sub->add_option("--kmax", o.kmax, "largest Virasoro index");
        sub->add_option("-M,--truncation", o.truncation, "truncation level of the Weyl algebra");
        sub->add_option("--format", o.format, "text or json");
        sub->add_option("--out", o.out, "write the report to this file");
        sub->add_option("--config", o.config, "JSON file with polynomial, group, checks, truncation, kmax");
        sub->add_option("--d", o.degrees, "degrees for semisimple");
        sub->add_option("--max-exp", o.max_exp, "exponent bound for cy-census");
        sub->add_option("--max-rank", o.max_rank, "rank bound for the Virasoro sweep in all");
        sub->add_flag("--timing", o.timing, "include wall-clock time in the report");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    const CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();

    std::vector<Check> checks;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (!o.config.empty()) load_config(o.config, o, *sub);
        validate(o);
        checks = run_command(cmd, o);
    } catch (const ParseError& e) {
        print_parse_error(e, o);
        return kUsage;
    } catch (const MapNotWellDefined& e) {
        std::cerr << "lgvw: internal assertion: " << e.what() << "\n";
        return kInternal;
    } catch (const Error& e) {
        std::cerr << "lgvw: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "lgvw: internal error: " << e.what() << "\n";
        return kInternal;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string body =
        o.format == "json" ? to_json(cmd, checks, o, seconds).dump(2) + "\n" : to_text(cmd, checks, o, seconds);
    if (o.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "lgvw: cannot write " << o.out << "\n";
            return kUsage;
        }
        f << body;
    }
    return summary_verdict(checks) == "pass" ? kPass : kFailed;
}
