#include <json.hpp>

#include "quditlab/sdp.hpp"

namespace quditlab::sdp {

namespace {

using nlohmann::json;

json mat_to_json(const Mat& m) {
    json out;
    out["rows"] = m.rows();
    std::vector<double> re, im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    out["re"] = re;
    out["im"] = im;
    return out;
}

Mat mat_from_json(const json& j) {
    const int n = j.at("rows").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != size_t(n) * n || im.size() != size_t(n) * n)
        throw InvalidInput("matrix payload has wrong length");
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            m(i, k) = cxd(re[size_t(i) * n + k], im[size_t(i) * n + k]);
    return m;
}

}  // namespace

std::string to_json(const SdpProblem& problem) {
    json j;
    j["sense"] = problem.sense == Sense::Min ? "min" : "max";
    j["psd_dims"] = problem.psd_dims;
    j["soc_dims"] = problem.soc_dims;
    json obj_psd = json::array();
    for (const Mat& m : problem.objective_psd)
        obj_psd.push_back(m.size() == 0 ? json(nullptr) : mat_to_json(m));
    j["objective_psd"] = obj_psd;
    json obj_soc = json::array();
    for (const auto& v : problem.objective_soc)
        obj_soc.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    j["objective_soc"] = obj_soc;
    json cons = json::array();
    for (const auto& con : problem.constraints) {
        json jc;
        jc["rhs"] = con.rhs;
        json psd = json::array();
        for (const Mat& m : con.psd)
            psd.push_back(m.size() == 0 ? json(nullptr) : mat_to_json(m));
        jc["psd"] = psd;
        json soc = json::array();
        for (const auto& v : con.soc)
            soc.push_back(std::vector<double>(v.data(), v.data() + v.size()));
        jc["soc"] = soc;
        cons.push_back(jc);
    }
    j["constraints"] = cons;
    return j.dump(2);
}

SdpProblem problem_from_json(const std::string& text) {
    const json j = json::parse(text);
    SdpProblem p;
    p.sense = j.at("sense").get<std::string>() == "max" ? Sense::Max : Sense::Min;
    p.psd_dims = j.at("psd_dims").get<std::vector<int>>();
    p.soc_dims = j.at("soc_dims").get<std::vector<int>>();
    for (const auto& jm : j.at("objective_psd"))
        p.objective_psd.push_back(jm.is_null() ? Mat() : mat_from_json(jm));
    for (const auto& jv : j.at("objective_soc")) {
        const auto v = jv.get<std::vector<double>>();
        p.objective_soc.push_back(
            Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
    }
    for (const auto& jc : j.at("constraints")) {
        SdpProblem::Constraint con;
        con.rhs = jc.at("rhs").get<double>();
        for (const auto& jm : jc.at("psd"))
            con.psd.push_back(jm.is_null() ? Mat() : mat_from_json(jm));
        for (const auto& jv : jc.at("soc")) {
            const auto v = jv.get<std::vector<double>>();
            con.soc.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
        }
        p.constraints.push_back(std::move(con));
    }
    p.validate();
    return p;
}

}  // namespace quditlab::sdp
