#include "ptq/sweep.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>

#include "parallel.hpp"
#include "ptq/classical.hpp"
#include "ptq/quantum.hpp"
#include "ptq/scattering.hpp"

namespace ptq {

using nlohmann::json;

namespace {

const std::vector<std::pair<std::string, Observable>>& observable_names() {
    static const std::vector<std::pair<std::string, Observable>> names{
        {"classical_power", Observable::ClassicalPower},  {"mean_photon_number", Observable::MeanPhotonNumber},
        {"p_boson", Observable::PBoson},                  {"p_entangled", Observable::PEntangled},
        {"p_fermion", Observable::PFermion},              {"ep_regime", Observable::EpRegime},
        {"eigenvalue_gap", Observable::EigenvalueGap},
    };
    return names;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(fmt::format("{}: {}", path, what));
}

const json& section(const json& doc, const std::string& key, std::set<std::string> allowed, bool required) {
    static const json empty = json::object();
    if (!doc.contains(key)) {
        if (required) fail(key, "missing section");
        return empty;
    }
    const json& sec = doc.at(key);
    if (!sec.is_object()) fail(key, "expected an object");
    for (const auto& [k, v] : sec.items()) {
        if (!allowed.count(k)) fail(key + "." + k, "unknown key");
        if (v.is_object()) fail(key + "." + k, "nested sections are not allowed");
    }
    return sec;
}

double number(const json& sec, const std::string& path, const std::string& key, double fallback) {
    if (!sec.contains(key)) return fallback;
    const json& v = sec.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

std::vector<double> number_list(const json& sec, const std::string& path, const std::string& key) {
    const json& v = sec.at(key);
    if (!v.is_array()) fail(path + "." + key, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(fmt::format("{}.{}[{}]", path, key, i), "expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::string text(const json& sec, const std::string& path, const std::string& key, const std::string& fallback) {
    if (!sec.contains(key)) return fallback;
    const json& v = sec.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

// Everything needed to evaluate one loss value of the sweep.
struct LossPoint {
    CouplerParams markov;  // gamma = effective loss
    std::optional<LatticePropagator> lattice;
    double rho = 0.0;
};

std::vector<LossPoint> prepare(const SweepConfig& c) {
    std::vector<LossPoint> out;
    int nsites = 0;
    if (c.lattice) {
        const double z_max = c.z.empty() ? 0.0 : *std::max_element(c.z.begin(), c.z.end());
        nsites = c.lattice->nsites.value_or(z_max > 0.0 ? min_lattice_size(c.lattice->sigma, z_max) : 1);
    }
    for (double loss : c.loss) {
        if (!c.lattice) {
            out.push_back({CouplerParams(c.beta1, c.beta2, c.kappa, loss), std::nullopt, 0.0});
            continue;
        }
        const LatticeReservoir lattice(c.lattice->sigma, loss, nsites, c.lattice->beta_lattice, c.lattice->attachment);
        const CouplerParams lossless(c.beta1, c.beta2, c.kappa, 0.0);
        out.push_back({lossless.with_gamma(lattice_gamma(lattice.sigma(), loss)), LatticePropagator(lossless, lattice), loss});
    }
    return out;
}

std::vector<std::string> header_for(const SweepConfig& c) {
    std::vector<std::string> header;
    if (c.lattice) header.push_back("rho");
    header.insert(header.end(), {"gamma", "phi", "z"});
    for (Observable o : c.observables) header.push_back(to_string(o));
    return header;
}

std::vector<Cell> evaluate_row(const SweepConfig& c, const LossPoint& lp, double phi, double z) {
    const ScatteringMatrix s = lp.lattice ? lp.lattice->scattering(z) : scattering_matrix(lp.markov, z);
    std::vector<Cell> row;
    if (c.lattice) row.emplace_back(lp.rho);
    row.insert(row.end(), {lp.markov.gamma(), phi, z});
    for (Observable o : c.observables) {
        switch (o) {
            case Observable::ClassicalPower: row.emplace_back(classical_power(s, c.classical_input)); break;
            case Observable::MeanPhotonNumber: row.emplace_back(mean_photon_number(s)); break;
            case Observable::PBoson: row.emplace_back(survival_indistinguishable(s)); break;
            case Observable::PEntangled: row.emplace_back(survival_entangled(s, phi)); break;
            case Observable::PFermion: row.emplace_back(survival_fermionic(s)); break;
            case Observable::EpRegime:
                row.emplace_back(lp.markov.beta1() == lp.markov.beta2() ? to_string(classify_ep(lp.markov).kind)
                                                                         : std::string("undefined"));
                break;
            case Observable::EigenvalueGap: row.emplace_back(supermodes(lp.markov).gap()); break;
        }
    }
    return row;
}

template <typename Loop>
CsvTable sweep_with(const SweepConfig& c, Loop&& loop) {
    CsvTable table;
    table.add_meta("backend", c.lattice ? "lattice" : "markovian");
    table.add_meta("beta1", c.beta1);
    table.add_meta("beta2", c.beta2);
    table.add_meta("kappa", c.kappa);
    table.add_meta("classical_input", to_string(c.classical_input));
    if (c.lattice) {
        table.add_meta("sigma", c.lattice->sigma);
        table.add_meta("beta_lattice", c.lattice->beta_lattice);
        table.add_meta("attachment", c.lattice->attachment == Attachment::Center ? "center" : "edge");
    }
    table.header = header_for(c);

    const std::vector<LossPoint> points = prepare(c);
    const std::size_t per_loss = c.phi.size() * c.z.size();
    const int total = static_cast<int>(points.size() * per_loss);
    std::vector<std::vector<Cell>> rows(static_cast<std::size_t>(total));
    loop(total, [&](int idx) {
        const auto i = static_cast<std::size_t>(idx);
        const std::size_t li = i / per_loss;
        const std::size_t pi = (i % per_loss) / c.z.size();
        const std::size_t zi = i % c.z.size();
        rows[i] = evaluate_row(c, points[li], c.phi[pi], c.z[zi]);
    });
    for (const auto& row : rows) table.add_row(row);
    return table;
}

}  // namespace

std::string to_string(Observable observable) {
    for (const auto& [name, o] : observable_names()) {
        if (o == observable) return name;
    }
    return "unknown";
}

SweepConfig parse_sweep_config(const json& doc) {
    if (!doc.is_object()) fail("<root>", "expected an object");
    const std::set<std::string> top{"coupler", "backend", "sweep", "classical_input", "observables"};
    for (const auto& [k, v] : doc.items()) {
        if (!top.count(k)) fail(k, "unknown key");
    }

    SweepConfig c;
    const json& coupler = section(doc, "coupler", {"beta1", "beta2", "kappa"}, false);
    c.beta1 = number(coupler, "coupler", "beta1", 0.0);
    c.beta2 = number(coupler, "coupler", "beta2", 0.0);
    c.kappa = number(coupler, "coupler", "kappa", 1.0);
    try {
        (void)CouplerParams(c.beta1, c.beta2, c.kappa, 0.0);
    } catch (const ValidationError& e) {
        fail("coupler", e.what());
    }

    const json& backend = section(doc, "backend", {"type", "sigma", "nsites", "beta_lattice", "attachment"}, false);
    const std::string type = text(backend, "backend", "type", "markovian");
    if (type == "lattice") {
        if (!backend.contains("sigma")) fail("backend.sigma", "required for the lattice backend");
        LatticeSweepBackend lat{number(backend, "backend", "sigma", 0.0), std::nullopt};
        if (!(lat.sigma > 0.0)) fail("backend.sigma", "sigma must be positive");
        if (backend.contains("nsites")) {
            const json& n = backend.at("nsites");
            if (!n.is_number_integer() || n.get<long long>() < 1) fail("backend.nsites", "expected a positive integer");
            lat.nsites = n.get<int>();
        }
        lat.beta_lattice = number(backend, "backend", "beta_lattice", c.beta2);
        const std::string attach = text(backend, "backend", "attachment", "center");
        if (attach == "edge") {
            lat.attachment = Attachment::Edge;
        } else if (attach != "center") {
            fail("backend.attachment", "expected \"center\" or \"edge\"");
        }
        c.lattice = lat;
    } else if (type == "markovian") {
        for (const char* k : {"sigma", "nsites", "beta_lattice", "attachment"}) {
            if (backend.contains(k)) fail(std::string("backend.") + k, "only valid for the lattice backend");
        }
    } else {
        fail("backend.type", "expected \"markovian\" or \"lattice\"");
    }

    const json& sweep = section(doc, "sweep", {"gamma", "rho", "phi", "z"}, true);
    if (!sweep.contains("z")) fail("sweep.z", "missing list");
    c.z = number_list(sweep, "sweep", "z");
    for (std::size_t i = 0; i < c.z.size(); ++i) {
        if (!(c.z[i] >= 0.0)) fail(fmt::format("sweep.z[{}]", i), "z must be non-negative");
    }
    if (sweep.contains("phi")) c.phi = number_list(sweep, "sweep", "phi");
    for (std::size_t i = 0; i < c.phi.size(); ++i) {
        if (!(c.phi[i] >= 0.0 && c.phi[i] <= kPi)) fail(fmt::format("sweep.phi[{}]", i), "phi must lie in [0, pi]");
    }
    if (c.lattice) {
        if (sweep.contains("gamma")) {
            fail("sweep.gamma", "intrinsic loss and explicit reservoir are mutually exclusive; sweep rho instead");
        }
        if (!sweep.contains("rho")) fail("sweep.rho", "missing list (required for the lattice backend)");
        c.loss = number_list(sweep, "sweep", "rho");
        for (std::size_t i = 0; i < c.loss.size(); ++i) {
            if (!(c.loss[i] >= 0.0)) fail(fmt::format("sweep.rho[{}]", i), "rho must be non-negative");
        }
    } else {
        if (sweep.contains("rho")) fail("sweep.rho", "only valid for the lattice backend");
        if (!sweep.contains("gamma")) fail("sweep.gamma", "missing list");
        c.loss = number_list(sweep, "sweep", "gamma");
        for (std::size_t i = 0; i < c.loss.size(); ++i) {
            if (!(c.loss[i] >= 0.0)) fail(fmt::format("sweep.gamma[{}]", i), "gamma must be non-negative");
        }
    }

    const std::string input = doc.contains("classical_input") ? text(doc, "<root>", "classical_input", "")
                                                              : std::string("balanced_orthogonal");
    if (input == "single_waveguide") {
        c.classical_input = ClassicalInput::SingleWaveguide;
    } else if (input != "balanced_orthogonal") {
        fail("classical_input", "expected \"balanced_orthogonal\" or \"single_waveguide\"");
    }

    if (doc.contains("observables")) {
        const json& obs = doc.at("observables");
        if (!obs.is_array()) fail("observables", "expected an array of names");
        for (std::size_t i = 0; i < obs.size(); ++i) {
            const auto path = fmt::format("observables[{}]", i);
            if (!obs[i].is_string()) fail(path, "expected a string");
            const auto name = obs[i].get<std::string>();
            const auto& names = observable_names();
            const auto it = std::find_if(names.begin(), names.end(), [&](const auto& p) { return p.first == name; });
            if (it == names.end()) fail(path, fmt::format("unknown observable '{}'", name));
            c.observables.push_back(it->second);
        }
    } else {
        for (const auto& [name, o] : observable_names()) c.observables.push_back(o);
    }
    return c;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open config '{}'", path));
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(fmt::format("{}: {}", path, e.what()));
    }
    return parse_sweep_config(doc);
}

CsvTable run_sweep(const SweepConfig& config) {
    return sweep_with(config, [](int n, auto&& body) { detail::parallel_for(n, body); });
}

CsvTable run_sweep_serial(const SweepConfig& config) {
    return sweep_with(config, [](int n, auto&& body) {
        for (int i = 0; i < n; ++i) body(i);
    });
}

}  // namespace ptq
