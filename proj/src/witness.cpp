#include "quditlab/witness.hpp"

#include <cmath>

namespace quditlab::witness {

WitnessResult witness_bound(const corr::CorrelationTable& table, int y,
                            int y_prime, int x) {
    if (x < 0 || x >= table.settings_a() || y < 0 || y >= table.settings_b() ||
        y_prime < 0 || y_prime >= table.settings_b())
        throw InvalidIndex("witness settings missing from the table");
    const int n = table.outcomes();
    double f = 0.0;
    for (int b = 0; b < n; ++b)
        for (int bp = 0; bp < n; ++bp) {
            double inner = 0.0;
            for (int a = 0; a < n; ++a)
                inner += std::sqrt(table.prob(a, b, x, y) *
                                   table.prob(a, bp, x, y_prime));
            f += inner * inner;
        }
    WitnessResult result;
    result.f_value = f;
    result.dimension_bound = 1.0 / f;
    result.certified_dim = static_cast<int>(std::ceil(result.dimension_bound - 1e-9));
    result.x = x;
    result.y = y;
    result.y_prime = y_prime;
    return result;
}

namespace {

// answer string of each outcome from the eigenvalue tuples the common
// eigenbasis attaches
std::vector<std::vector<int>> answers_from_tuples(const MeasurementBasis& basis) {
    std::vector<std::vector<int>> out;
    for (const auto& tuple : basis.eigenvalue_tuples()) {
        std::vector<int> answer;
        answer.reserve(tuple.size());
        for (double v : tuple) answer.push_back(v >= 0.0 ? 1 : -1);
        out.push_back(std::move(answer));
    }
    return out;
}

MeasurementBasis line_basis(const std::vector<std::string>& line) {
    std::vector<Mat> ops;
    ops.reserve(line.size());
    for (const auto& name : line) ops.push_back(pauli_string(name));
    return common_eigenbasis(ops);
}

// tensor product of two bases with concatenated answers
std::pair<MeasurementBasis, std::vector<std::vector<int>>> tensor_basis(
    const MeasurementBasis& b, const std::vector<std::vector<int>>& answers) {
    std::vector<Mat> projs;
    std::vector<std::vector<int>> combined;
    for (int i = 0; i < b.outcomes(); ++i)
        for (int j = 0; j < b.outcomes(); ++j) {
            projs.push_back(kron(b.projector(i), b.projector(j)));
            std::vector<int> answer = answers[i];
            answer.insert(answer.end(), answers[j].begin(), answers[j].end());
            combined.push_back(std::move(answer));
        }
    return {MeasurementBasis(std::move(projs)), std::move(combined)};
}

}  // namespace

GameStrategy magic_square_strategy() {
    // operator grid: rows multiply to +I, columns to -I
    const std::vector<std::vector<std::string>> grid = {
        {"IZ", "ZI", "ZZ"},
        {"XI", "IX", "XX"},
        {"XZ", "ZX", "YY"},
    };
    // the third row carries minus signs on its first two entries
    auto grid_op = [&](int r, int c) {
        Mat op = pauli_string(grid[r][c]);
        if (r == 2 && c != 2) op = -op;
        return op;
    };

    GameStrategy strategy{max_entangled_state(4), {}, {}, {}, {}, {}, {}, 0, 0, 1};
    for (int r = 0; r < 3; ++r) {
        std::vector<Mat> ops = {grid_op(r, 0), grid_op(r, 1), grid_op(r, 2)};
        MeasurementBasis basis = common_eigenbasis(ops);
        strategy.alice_answers.push_back(answers_from_tuples(basis));
        strategy.alice_bases.push_back(std::move(basis));
        strategy.alice_setting_names.push_back("row" + std::to_string(r + 1));
    }
    for (int c = 0; c < 3; ++c) {
        std::vector<Mat> ops = {grid_op(0, c), grid_op(1, c), grid_op(2, c)};
        MeasurementBasis basis = common_eigenbasis(ops);
        strategy.bob_answers.push_back(answers_from_tuples(basis));
        strategy.bob_bases.push_back(std::move(basis));
        strategy.bob_setting_names.push_back("col" + std::to_string(c + 1));
    }
    strategy.witness_x = 0;   // row 1
    strategy.witness_y = 0;   // column 1
    strategy.witness_y_prime = 1;  // column 2
    return strategy;
}

GameStrategy magic_pentagram_strategy() {
    GameStrategy strategy{max_entangled_state(8), {}, {}, {}, {}, {}, {}, 0, 0, 1};
    MeasurementBasis line3 = line_basis({"ZII", "IZI", "IIZ", "ZZZ"});
    MeasurementBasis line5 = line_basis({"ZZZ", "ZXX", "XZX", "XXZ"});

    strategy.alice_answers.push_back(answers_from_tuples(line3));
    strategy.alice_bases.push_back(line3);
    strategy.alice_setting_names.push_back("line3");

    strategy.bob_answers.push_back(answers_from_tuples(line3));
    strategy.bob_answers.push_back(answers_from_tuples(line5));
    strategy.bob_bases.push_back(std::move(line3));
    strategy.bob_bases.push_back(std::move(line5));
    strategy.bob_setting_names = {"line3", "line5"};

    strategy.witness_x = 0;
    strategy.witness_y = 0;
    strategy.witness_y_prime = 1;
    return strategy;
}

GameStrategy two_copy_square_strategy() {
    GameStrategy square = magic_square_strategy();
    GameStrategy strategy{max_entangled_state(16), {}, {}, {}, {}, {}, {}, 0, 0, 1};

    auto [alice, alice_answers] =
        tensor_basis(square.alice_bases[0], square.alice_answers[0]);
    strategy.alice_bases.push_back(std::move(alice));
    strategy.alice_answers.push_back(std::move(alice_answers));
    strategy.alice_setting_names.push_back("row1,row1");

    auto [bob1, bob1_answers] =
        tensor_basis(square.bob_bases[0], square.bob_answers[0]);
    auto [bob2, bob2_answers] =
        tensor_basis(square.bob_bases[1], square.bob_answers[1]);
    strategy.bob_bases.push_back(std::move(bob1));
    strategy.bob_bases.push_back(std::move(bob2));
    strategy.bob_answers.push_back(std::move(bob1_answers));
    strategy.bob_answers.push_back(std::move(bob2_answers));
    strategy.bob_setting_names = {"col1,col1", "col2,col2"};

    strategy.witness_x = 0;
    strategy.witness_y = 0;
    strategy.witness_y_prime = 1;
    return strategy;
}

PureState embed_state(int d, int d_host) {
    if (d < 1 || d > d_host)
        throw InvalidDimension("embedded dimension exceeds the host");
    Vec c = Vec::Zero(d_host);
    c.head(d) = Vec::Ones(d);
    return entangled_state(c);
}

corr::CorrelationTable strategy_table(const GameStrategy& strategy) {
    return strategy_table(strategy, strategy.state);
}

corr::CorrelationTable strategy_table(const GameStrategy& strategy,
                                      const PureState& state) {
    return corr::born_probabilities(state, strategy.alice_bases,
                                    strategy.bob_bases);
}

WitnessResult evaluate_strategy(const GameStrategy& strategy) {
    const corr::CorrelationTable table = strategy_table(strategy);
    return witness_bound(table, strategy.witness_y, strategy.witness_y_prime,
                         strategy.witness_x);
}

WitnessResult scenario_two(int d) {
    if (d < 2) throw InvalidDimension("dimension must be >= 2");
    const auto basis = computational_basis(d);
    const corr::CorrelationTable table =
        corr::born_probabilities(max_entangled_state(d), {basis}, {basis});
    return witness_bound(table, 0, 0, 0);
}

}  // namespace quditlab::witness
