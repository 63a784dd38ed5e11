#include "uqres/io.hpp"

#include <fstream>
#include <sstream>

namespace uqres::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(as_int(x, what));
    return out;
}

HilbertSpec spec_from(const json& j, std::size_t cap) {
    return HilbertSpec(int_list(field(j, "dims"), "dims"), cap);
}

} // namespace

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vec_to_json(const Vec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError("complex entries must be numbers or [re, im] pairs");
}

Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("matrix must be a non-empty list of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("ragged matrix rows");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

Vec vector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("vector must be an array");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

json to_json(const StateVector& psi) {
    return {{"dims", psi.spec().dims()}, {"amplitudes", vec_to_json(psi.amplitudes())}};
}

StateVector state_from_json(const json& j, std::size_t cap) {
    return StateVector(spec_from(j, cap), vector_from_json(field(j, "amplitudes")));
}

json to_json(const DensityOperator& rho) {
    return {{"dims", rho.spec().dims()}, {"density", to_json(rho.matrix())}};
}

DensityOperator density_from_json(const json& j, std::size_t cap) {
    if (j.is_object() && j.contains("amplitudes")) return DensityOperator::pure(state_from_json(j, cap));
    return DensityOperator(spec_from(j, cap), matrix_from_json(field(j, "density")));
}

// ---------------------------------------------------------------------------
// Circuits

namespace {

json gate_json(const GateOp& g) {
    json o{{"wires", g.wires}};
    if (!g.name.empty()) {
        try {
            const Mat named = gates::by_name(g.name);
            if (named.rows() == g.matrix.rows() && (named - g.matrix).cwiseAbs().maxCoeff() < 1e-15) {
                o["name"] = g.name;
                return o;
            }
        } catch (const Error&) {
        }
    }
    o["matrix"] = to_json(g.matrix);
    if (!g.name.empty()) o["label"] = g.name;
    return o;
}

GateOp gate_from(const json& j) {
    GateOp g;
    g.wires = int_list(field(j, "wires"), "wires");
    if (j.contains("matrix")) {
        g.matrix = matrix_from_json(j.at("matrix"));
        if (j.contains("label") && j.at("label").is_string()) g.name = j.at("label").get<std::string>();
    } else {
        const auto& n = field(j, "name");
        if (!n.is_string()) throw ParseError("gate name must be a string");
        g.name = n.get<std::string>();
        try {
            g.matrix = gates::by_name(g.name);
        } catch (const Error& e) {
            throw ParseError(e.what());
        }
    }
    return g;
}

Basis basis_from(const std::string& s) {
    if (s == "Z") return Basis::Z;
    if (s == "X") return Basis::X;
    if (s == "Y") return Basis::Y;
    if (s == "custom") return Basis::custom;
    throw ParseError("unknown basis '" + s + "'");
}

const char* basis_name(Basis b) {
    switch (b) {
    case Basis::Z:
        return "Z";
    case Basis::X:
        return "X";
    case Basis::Y:
        return "Y";
    case Basis::custom:
        return "custom";
    }
    return "Z";
}

} // namespace

json to_json(const Circuit& c) {
    json ops = json::array();
    for (const auto& ins : c.ops()) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            json o = gate_json(*g);
            o["type"] = "gate";
            ops.push_back(std::move(o));
        } else if (const auto* m = std::get_if<MuxOp>(&ins)) {
            json br = json::array();
            for (const auto& b : m->branches) br.push_back(to_json(b));
            ops.push_back({{"type", "mux"}, {"control", m->control}, {"branches", br}, {"targets", m->targets}});
        } else if (const auto* ms = std::get_if<MeasureOp>(&ins)) {
            json o{{"type", "measure"}, {"wire", ms->wire}, {"basis", basis_name(ms->basis)}, {"out", ms->out}};
            if (ms->basis == Basis::custom) o["matrix"] = to_json(ms->custom);
            ops.push_back(std::move(o));
        } else if (const auto* cd = std::get_if<CondOp>(&ins)) {
            json when = json::object();
            for (const auto& [k, v] : cd->when) when[k] = v;
            ops.push_back({{"type", "cond"}, {"when", when}, {"gate", gate_json(cd->gate)}});
        } else if (const auto* d = std::get_if<DiscardOp>(&ins)) {
            ops.push_back({{"type", "discard"}, {"wire", d->wire}});
        }
    }
    return {{"wires", c.wires().dims()}, {"ops", ops}};
}

Circuit circuit_from_json(const json& j, std::size_t cap) {
    Circuit c(HilbertSpec(int_list(field(j, "wires"), "wires"), cap));
    const auto& ops = field(j, "ops");
    if (!ops.is_array()) throw ParseError("ops must be an array");
    for (const auto& o : ops) {
        const auto& type = field(o, "type");
        if (!type.is_string()) throw ParseError("op type must be a string");
        const auto t = type.get<std::string>();
        if (t == "gate") {
            c.append(gate_from(o));
        } else if (t == "mux") {
            MuxOp m;
            m.control = as_int(field(o, "control"), "control");
            const auto& br = field(o, "branches");
            if (!br.is_array()) throw ParseError("branches must be an array");
            for (const auto& b : br) m.branches.push_back(matrix_from_json(b));
            m.targets = int_list(o.contains("targets") ? o.at("targets") : field(o, "wires"), "targets");
            c.append(m);
        } else if (t == "measure") {
            MeasureOp m;
            m.wire = as_int(field(o, "wire"), "wire");
            m.basis = o.contains("basis") ? basis_from(o.at("basis").get<std::string>()) : Basis::Z;
            if (m.basis == Basis::custom) m.custom = matrix_from_json(field(o, "matrix"));
            const auto& out = field(o, "out");
            if (!out.is_string()) throw ParseError("measure out must be a string");
            m.out = out.get<std::string>();
            c.append(m);
        } else if (t == "cond") {
            CondOp cd;
            const auto& when = field(o, "when");
            if (!when.is_object()) throw ParseError("cond when must be an object");
            for (const auto& [k, v] : when.items()) cd.when[k] = as_int(v, "outcome");
            cd.gate = gate_from(field(o, "gate"));
            c.append(cd);
        } else if (t == "discard") {
            c.append(DiscardOp{as_int(field(o, "wire"), "wire")});
        } else {
            throw ParseError("unknown op type '" + t + "'");
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// MPS, term sums, programs

json to_json(const MPSChain& chain) {
    json sites = json::array();
    for (const auto& site : chain.tensors()) {
        json s = json::array();
        for (const auto& a : site) s.push_back(to_json(a));
        sites.push_back(std::move(s));
    }
    return {{"tensors", sites}, {"boundary", to_json(chain.boundary())}};
}

MPSChain mps_from_json(const json& j) {
    const auto& sites = field(j, "tensors");
    if (!sites.is_array()) throw ParseError("tensors must be an array");
    std::vector<std::vector<Mat>> t;
    for (const auto& s : sites) {
        if (!s.is_array()) throw ParseError("each site must list its matrices");
        std::vector<Mat> site;
        for (const auto& a : s) site.push_back(matrix_from_json(a));
        t.push_back(std::move(site));
    }
    return MPSChain(std::move(t), matrix_from_json(field(j, "boundary")));
}

json to_json(const TermSum& terms) {
    json ts = json::array();
    for (const auto& t : terms.terms())
        ts.push_back({{"sites", t.sites}, {"matrix", to_json(t.matrix)}, {"weight", t.weight}});
    return {{"dims", terms.spec().dims()}, {"terms", ts}};
}

TermSum termsum_from_json(const json& j, std::size_t cap) {
    const HilbertSpec spec = spec_from(j, cap);
    const auto& ts = field(j, "terms");
    if (!ts.is_array()) throw ParseError("terms must be an array");
    std::vector<HamiltonianTerm> terms;
    for (const auto& t : ts) {
        HamiltonianTerm h;
        h.sites = int_list(field(t, "sites"), "sites");
        if (t.contains("matrix")) {
            h.matrix = matrix_from_json(t.at("matrix"));
        } else {
            const auto& n = field(t, "name");
            if (!n.is_string()) throw ParseError("term name must be a string");
            try {
                h.matrix = gates::by_name(n.get<std::string>());
            } catch (const Error& e) {
                throw ParseError(e.what());
            }
        }
        if (t.contains("weight")) {
            if (!t.at("weight").is_number()) throw ParseError("weight must be a number");
            h.weight = t.at("weight").get<double>();
        }
        terms.push_back(std::move(h));
    }
    return TermSum(spec, std::move(terms));
}

namespace {

std::vector<std::vector<LogicalGate>> rows_from(const json& j, const char* what) {
    std::vector<std::vector<LogicalGate>> out;
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    for (const auto& row : j) {
        if (!row.is_array()) throw ParseError(std::string(what) + " rows must be arrays");
        std::vector<LogicalGate> r;
        for (const auto& g : row) {
            const auto s = g.is_string() ? g.get<std::string>() : std::string();
            if (s == "H")
                r.push_back(LogicalGate::H);
            else if (s == "T")
                r.push_back(LogicalGate::T);
            else
                throw ParseError("program gates must be \"H\" or \"T\"");
        }
        out.push_back(std::move(r));
    }
    return out;
}

json rows_json(const std::vector<std::vector<LogicalGate>>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json r = json::array();
        for (auto g : row) r.push_back(g == LogicalGate::H ? "H" : "T");
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

json to_json(const PmqcProgram& p) {
    return {{"qubits", p.qubits}, {"pre", rows_json(p.pre)}, {"cz", p.cz}, {"post", rows_json(p.post)}};
}

PmqcProgram pmqc_from_json(const json& j) {
    PmqcProgram p;
    p.qubits = as_int(field(j, "qubits"), "qubits");
    p.pre = rows_from(field(j, "pre"), "pre");
    if (j.contains("cz")) {
        if (!j.at("cz").is_boolean()) throw ParseError("cz must be a boolean");
        p.cz = j.at("cz").get<bool>();
    }
    p.post = j.contains("post") ? rows_from(j.at("post"), "post")
                                : std::vector<std::vector<LogicalGate>>(static_cast<std::size_t>(std::max(p.qubits, 0)));
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------
// Reports

json to_json(const TranscriptEvent& e) {
    json payload = json::object();
    for (const auto& [k, v] : e.payload) payload[k] = v;
    return {{"t", e.t}, {"party", e.party}, {"action", e.action}, {"payload", payload}};
}

json to_json(const Transcript& t) {
    json out = json::array();
    for (const auto& e : t.events()) out.push_back(to_json(e));
    return out;
}

std::string transcript_lines(const Transcript& t) {
    std::string s;
    for (const auto& e : t.events()) s += to_json(e).dump() + "\n";
    return s;
}

json to_json(const BranchOutcome& b) {
    json outcomes = json::object();
    for (const auto& [k, v] : b.outcomes) outcomes[k] = v;
    json o{{"outcomes", outcomes}, {"probability", b.probability}, {"wires", b.wires}};
    if (b.pure)
        o["state"] = to_json(*b.pure);
    else
        o["state"] = to_json(*b.mixed);
    return o;
}

json to_json(const AlgorithmReport& r) {
    r.validate();
    return {{"algorithm", r.algorithm},
            {"parameters", r.parameters},
            {"terms", r.terms},
            {"residuals", r.residuals},
            {"success_probabilities", r.success_probabilities}};
}

} // namespace uqres::io
