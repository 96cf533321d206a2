#include "slowtorus/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slowtorus {

namespace {

using nlohmann::json;

json rat_pair(const std::pair<Rat, Rat>& p) { return json::array({rat_str(p.first), rat_str(p.second)}); }

std::string mode_str(ConstantsProfile::Mode m) {
    return m == ConstantsProfile::Mode::Paper ? "paper" : "desk";
}

}  // namespace

json state_to_json(const ConstructionState& st, const AlphaCertificate& ac) {
    json j;
    j["phi"] = st.phi.spec_str();
    j["mode"] = mode_str(st.profile.mode);
    j["lambda"] = st.profile.lambda;
    j["depth"] = st.depth;

    json q = json::array(), r = json::array(), N = json::array(), M = json::array();
    json thr = json::array(), k = json::array(), A = json::array();
    for (int i = 1; i <= st.depth + 1; ++i) q.push_back(st.q[i].get_str());
    for (int i = 1; i <= st.depth; ++i) {
        r.push_back("2^-" + std::to_string(st.r_exp[i]));
        N.push_back(st.N[i].get_str());
        M.push_back(st.M_set[i] ? json(st.M[i].get_str()) : json(nullptr));
        thr.push_back(rat_str(st.m_threshold[i]));
        k.push_back(st.k[i].get_str());
        A.push_back(rat_pair(st.A[i]));
    }
    j["q"] = q;
    j["r"] = r;
    j["N"] = N;
    j["M"] = M;
    j["m_threshold"] = thr;
    j["k"] = k;
    j["A"] = A;
    j["B"] = rat_str(st.B);
    j["alpha"] = rat_str(ac.alpha);
    json res = json::array();
    for (int i = 1; i <= st.depth; ++i) res.push_back(rat_str(ac.residues[i]));
    j["residues"] = res;
    j["tail_bound"] = rat_str(ac.tail_bound);
    return j;
}

std::pair<ConstructionState, AlphaCertificate> state_from_json(const json& j) {
    ConstructionState st;
    st.phi = GrowthFunction::parse(j.at("phi").get<std::string>());
    st.profile.mode = j.at("mode").get<std::string>() == "desk" ? ConstantsProfile::Mode::Desk
                                                                : ConstantsProfile::Mode::Paper;
    st.profile.lambda = j.at("lambda").get<int>();
    int depth = j.at("depth").get<int>();
    st.depth = depth;

    st.q.assign(1, Int(0));  // default state carries q_1 = 1 already; rebuild from scratch
    for (const auto& s : j.at("q")) st.q.push_back(Int(s.get<std::string>()));
    if (static_cast<int>(st.q.size()) != depth + 2)
        throw std::invalid_argument("state: q must have depth+1 entries");
    for (const auto& s : j.at("r")) {
        std::string v = s.get<std::string>();
        if (v.rfind("2^-", 0) != 0) throw std::invalid_argument("state: r entries must be 2^-e");
        long e = std::stol(v.substr(3));
        st.r_exp.push_back(e);
        st.r.push_back(pow2(-e));
    }
    for (const auto& s : j.at("N")) st.N.push_back(Int(s.get<std::string>()));
    for (const auto& s : j.at("M")) {
        if (s.is_null()) {
            st.M.push_back(Int(0));
            st.M_set.push_back(false);
        } else {
            st.M.push_back(Int(s.get<std::string>()));
            st.M_set.push_back(true);
        }
    }
    for (const auto& s : j.at("m_threshold")) st.m_threshold.push_back(parse_rat(s.get<std::string>()));
    for (const auto& s : j.at("k")) st.k.push_back(Int(s.get<std::string>()));
    for (const auto& a : j.at("A"))
        st.A.emplace_back(parse_rat(a.at(0).get<std::string>()), parse_rat(a.at(1).get<std::string>()));
    st.B = parse_rat(j.at("B").get<std::string>());

    if (static_cast<int>(st.r.size()) != depth + 1 || static_cast<int>(st.N.size()) != depth + 1 ||
        static_cast<int>(st.M.size()) != depth + 1 || static_cast<int>(st.k.size()) != depth + 1 ||
        static_cast<int>(st.A.size()) != depth + 1)
        throw std::invalid_argument("state: array lengths inconsistent with depth");

    AlphaCertificate ac;
    ac.alpha = parse_rat(j.at("alpha").get<std::string>());
    ac.residues.assign(1, Rat(0));
    for (const auto& s : j.at("residues")) ac.residues.push_back(parse_rat(s.get<std::string>()));
    ac.tail_bound = parse_rat(j.at("tail_bound").get<std::string>());
    return {std::move(st), std::move(ac)};
}

json certificate_to_json(const Certificate& cert) {
    json j;
    j["state_digest"] = cert.digest;
    j["profile"] = cert.profile;
    j["horizon"] = cert.horizon;
    j["overall"] = status_str(cert.overall);
    json checks = json::array();
    for (const auto& c : cert.checks) {
        json e;
        e["name"] = c.name;
        e["status"] = status_str(c.status);
        e["margin_lo"] = c.margin.lo_str();
        e["margin_hi"] = c.margin.hi_str();
        e["witnesses"] = c.witness;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["notes"] = cert.notes;
    return j;
}

std::string growth_csv(const std::vector<GrowthRecord>& rows) {
    std::ostringstream out;
    out << "N,phi_lo,phi_hi,S_lo,S_hi,T_lo,T_hi,Wmax_lo,Wmax_hi,gamma_lo,gamma_hi\n";
    for (const auto& r : rows) {
        out << r.N.get_str() << ',' << r.phi_N.lo_str() << ',' << r.phi_N.hi_str() << ','
            << r.S.lo_str() << ',' << r.S.hi_str() << ',' << r.T.lo_str() << ',' << r.T.hi_str()
            << ',' << r.Wmax.lo_str() << ',' << r.Wmax.hi_str() << ',' << r.gamma.lo_str() << ','
            << r.gamma.hi_str() << '\n';
    }
    return out.str();
}

std::string plot_data_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    out << "N,ratio_lo,ratio_hi\n";
    std::string line;
    if (!std::getline(in, line)) return out.str();
    if (line.rfind("N,phi_lo", 0) != 0) throw std::invalid_argument("plot_data: not a growth CSV");
    mpfr_t phi_lo, phi_hi, g_lo, g_hi, r_lo, r_hi;
    mpfr_inits2(128, phi_lo, phi_hi, g_lo, g_hi, r_lo, r_hi, static_cast<mpfr_ptr>(nullptr));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) f.push_back(tok);
        if (f.size() != 11) throw std::invalid_argument("plot_data: malformed row: " + line);
        mpfr_set_str(phi_lo, f[1].c_str(), 10, MPFR_RNDD);
        mpfr_set_str(phi_hi, f[2].c_str(), 10, MPFR_RNDU);
        mpfr_set_str(g_lo, f[9].c_str(), 10, MPFR_RNDD);
        mpfr_set_str(g_hi, f[10].c_str(), 10, MPFR_RNDU);
        mpfr_div(r_lo, g_lo, phi_hi, MPFR_RNDD);
        mpfr_div(r_hi, g_hi, phi_lo, MPFR_RNDU);
        char* lo = nullptr;
        char* hi = nullptr;
        mpfr_asprintf(&lo, "%.20RDe", r_lo);
        mpfr_asprintf(&hi, "%.20RUe", r_hi);
        out << f[0] << ',' << lo << ',' << hi << '\n';
        mpfr_free_str(lo);
        mpfr_free_str(hi);
    }
    mpfr_clears(phi_lo, phi_hi, g_lo, g_hi, r_lo, r_hi, static_cast<mpfr_ptr>(nullptr));
    return out.str();
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string digest_hex(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + tmp + " -> " + path);
}

}  // namespace slowtorus
