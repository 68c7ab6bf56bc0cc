#include "sfar/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace sfar {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

json model_to_json(const SignalModel& model) {
    model.validate();
    json comps = json::array();
    for (const auto& c : model.components)
        comps.push_back({{"amp", c.amplitude}, {"kx", c.kx}, {"ky", c.ky}});
    return {{"nx", model.dims.nx}, {"ny", model.dims.ny}, {"components", comps}};
}

SignalModel model_from_json(const json& doc) {
    SignalModel model;
    model.dims = {doc.at("nx").get<int>(), doc.at("ny").get<int>()};
    for (const auto& c : doc.at("components"))
        model.components.push_back(
            {c.at("amp").get<double>(), c.at("kx").get<int>(), c.at("ky").get<int>()});
    model.validate();
    return model;
}

json support_to_json(const SampleSupport& support) {
    support.validate();
    json positions = json::array();
    for (const auto& p : support.positions) positions.push_back({p.x, p.y});
    return {{"nx", support.dims.nx}, {"ny", support.dims.ny}, {"positions", positions}};
}

SampleSupport support_from_json(const json& doc) {
    SampleSupport support;
    support.dims = {doc.at("nx").get<int>(), doc.at("ny").get<int>()};
    for (const auto& p : doc.at("positions"))
        support.positions.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    support.validate();
    return support;
}

json result_to_json(const ReconstructionResult& result, GridDims dims) {
    json bins = json::array();
    json coeffs = json::array();
    for (std::size_t i = 0; i < result.coefficients.support.bins.size(); ++i) {
        const auto& b = result.coefficients.support.bins[i];
        const auto& c = result.coefficients.coeffs[i];
        bins.push_back({b.kx, b.ky});
        coeffs.push_back({c.real(), c.imag()});
    }
    json iterations = json::array();
    for (const auto& it : result.iterations) {
        json new_bins = json::array();
        for (const auto& b : it.new_bins) new_bins.push_back({b.kx, b.ky});
        iterations.push_back({{"iteration", it.iteration},
                              {"new_bins", new_bins},
                              {"chi", it.chi},
                              {"energy", it.energy},
                              {"residual_energy", it.residual_energy}});
    }
    return {{"nx", dims.nx},
            {"ny", dims.ny},
            {"bins", bins},
            {"coefficients", coeffs},
            {"iterations", iterations},
            {"converged", result.converged}};
}

json report_to_json(const TrialReport& report) {
    return {{"sampling_ratio", report.sampling_ratio},
            {"trials", report.records.size()},
            {"empirical_variance", report.empirical_variance},
            {"predicted_variance", report.predicted_variance},
            {"coverage", report.coverage},
            {"detection_precision", report.detection_precision},
            {"detection_recall", report.detection_recall},
            {"exact_detection_rate", report.exact_detection_rate()},
            {"nmse", report.nmse}};
}

std::string report_to_csv(const TrialReport& report) {
    std::ostringstream out;
    out << "trial,m,energy,chi,mean_offpeak_sq,max_offpeak,covered,"
           "precision,recall,nmse,iterations,converged\n";
    for (const auto& r : report.records) {
        out << r.index << ',' << r.m << ',' << fmt(r.energy) << ',' << fmt(r.chi) << ','
            << fmt(r.mean_offpeak_sq) << ',' << fmt(r.max_offpeak) << ','
            << (r.covered ? 1 : 0) << ',' << fmt(r.precision) << ',' << fmt(r.recall)
            << ',' << fmt(r.nmse) << ',' << r.iterations << ','
            << (r.converged ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace sfar
