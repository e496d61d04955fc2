#include "quditlab/json_io.hpp"

#include <json.hpp>

namespace quditlab::io {

namespace {

using nlohmann::json;

json complex_payload(int dim, const cxd* data, size_t count) {
    json j;
    j["dim"] = dim;
    std::vector<double> re(count), im(count);
    for (size_t i = 0; i < count; ++i) {
        re[i] = data[i].real();
        im[i] = data[i].imag();
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

std::pair<int, std::vector<cxd>> parse_payload(const json& j) {
    const int dim = j.at("dim").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw InvalidInput("re/im length mismatch");
    std::vector<cxd> data(re.size());
    for (size_t i = 0; i < re.size(); ++i) data[i] = cxd(re[i], im[i]);
    return {dim, std::move(data)};
}

}  // namespace

std::string to_json(const PureState& psi) {
    return complex_payload(psi.dim(), psi.amplitudes().data(),
                           size_t(psi.dim()))
        .dump();
}

std::string to_json(const DensityMatrix& rho) {
    // row-major layout
    const Mat m = rho.matrix().transpose();
    return complex_payload(rho.dim(), m.data(), size_t(m.size())).dump();
}

std::string to_json(const MeasurementBasis& basis) {
    json out = json::array();
    for (int k = 0; k < basis.outcomes(); ++k) {
        const Mat m = basis.projector(k).transpose();
        out.push_back(complex_payload(basis.dim(), m.data(), size_t(m.size())));
    }
    return out.dump();
}

PureState pure_state_from_json(const std::string& text) {
    auto [dim, data] = parse_payload(json::parse(text));
    if (data.size() != size_t(dim)) throw InvalidInput("state payload length mismatch");
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = data[i];
    return PureState(std::move(v));
}

DensityMatrix density_from_json(const std::string& text) {
    auto [dim, data] = parse_payload(json::parse(text));
    if (data.size() != size_t(dim) * dim)
        throw InvalidInput("matrix payload length mismatch");
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = data[size_t(i) * dim + j];
    return DensityMatrix(std::move(m));
}

MeasurementBasis basis_from_json(const std::string& text) {
    const json arr = json::parse(text);
    if (!arr.is_array()) throw InvalidInput("basis payload must be an array");
    std::vector<Mat> projs;
    for (const auto& jp : arr) {
        auto [dim, data] = parse_payload(jp);
        if (data.size() != size_t(dim) * dim)
            throw InvalidInput("projector payload length mismatch");
        Mat m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = data[size_t(i) * dim + j];
        projs.push_back(std::move(m));
    }
    return MeasurementBasis(std::move(projs));
}

}  // namespace quditlab::io
