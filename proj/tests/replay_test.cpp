#include <doctest.h>

#include <cmath>
#include <vector>

#include "mccfr/check.hpp"
#include "mccfr/replay.hpp"
#include "mccfr/rng.hpp"

using namespace mccfr;

namespace {

Experience make_exp(double td, std::int64_t iteration = 0) {
  Experience e;
  e.features = {0.5, 0.5};
  e.target_strategy = {0.5, 0.5};
  e.legal = {0, 1};
  e.importance_weight = 1.0;
  e.td_error = td;
  e.iteration = iteration;
  return e;
}

}  // namespace

TEST_SUITE("replay") {

TEST_CASE("the buffer is a bounded FIFO") {
  ReplayBuffer buf(3, 0.6, 1e-3);
  for (int i = 1; i <= 5; ++i) buf.push(make_exp(1.0, i));
  REQUIRE(buf.size() == 3);
  CHECK(buf.capacity() == 3);
  CHECK(buf.at(0).iteration == 3);  // oldest surviving
  CHECK(buf.at(1).iteration == 4);
  CHECK(buf.at(2).iteration == 5);
}

TEST_CASE("pushes validate their payload") {
  ReplayBuffer buf(4, 0.6, 1e-3);
  Experience bad = make_exp(std::nan(""));
  CHECK_THROWS_AS(buf.push(bad), Error);
  Experience mismatched = make_exp(1.0);
  mismatched.target_strategy = {1.0};
  CHECK_THROWS_AS(buf.push(mismatched), Error);
}

TEST_CASE("priorities follow the exponentiated signal and alpha zero is uniform") {
  ReplayBuffer buf(4, 1.0, 0.0 + 1e-12);
  buf.push(make_exp(1.0));
  buf.push(make_exp(3.0));
  const std::vector<double> p = buf.probabilities();
  CHECK(p[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-9));

  ReplayBuffer uniform(4, 0.0, 1e-3);
  uniform.push(make_exp(0.001));
  uniform.push(make_exp(1000.0));
  const std::vector<double> q = uniform.probabilities();
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(0.5));

  ReplayBuffer shaped(4, 0.6, 1e-3);
  shaped.push(make_exp(0.2));
  shaped.push(make_exp(0.7));
  shaped.push(make_exp(0.0));
  const std::vector<double> r = shaped.probabilities();
  const double a = std::pow(0.2 + 1e-3, 0.6);
  const double b = std::pow(0.7 + 1e-3, 0.6);
  const double c = std::pow(0.0 + 1e-3, 0.6);
  CHECK(r[0] == doctest::Approx(a / (a + b + c)).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(b / (a + b + c)).epsilon(1e-12));
  CHECK(r[2] == doctest::Approx(c / (a + b + c)).epsilon(1e-12));
}

TEST_CASE("correction weights equal the analytic importance formula") {
  ReplayBuffer buf(8, 0.6, 1e-3);
  const std::vector<double> tds = {0.05, 0.4, 1.3, 2.0, 0.0};
  for (double td : tds) buf.push(make_exp(td));
  const std::vector<double> p = buf.probabilities();
  const double n = static_cast<double>(buf.size());
  for (double beta : {0.0, 0.3, 0.7, 1.0}) {
    for (std::size_t i = 0; i < buf.size(); ++i) {
      const double expected = std::pow(n * p[i], -beta);
      CHECK(std::abs(buf.correction_weight(i, beta) - expected) < 1e-12);
    }
  }
  // beta = 0 corrects nothing.
  for (std::size_t i = 0; i < buf.size(); ++i) {
    CHECK(buf.correction_weight(i, 0.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("batches are max-normalized and index-valid, with replacement allowed") {
  ReplayBuffer buf(8, 0.6, 1e-3);
  buf.push(make_exp(0.1));
  buf.push(make_exp(2.0));
  Rng rng(99);
  const ReplayBuffer::Batch batch = buf.sample(16, 0.5, rng);  // larger than contents
  REQUIRE(batch.indices.size() == 16);
  double max_w = 0.0;
  for (std::size_t j = 0; j < 16; ++j) {
    CHECK(batch.indices[j] < buf.size());
    CHECK(batch.weights[j] > 0.0);
    CHECK(batch.weights[j] <= 1.0 + 1e-15);
    max_w = std::max(max_w, batch.weights[j]);
  }
  CHECK(max_w == doctest::Approx(1.0));

  ReplayBuffer empty(4, 0.6, 1e-3);
  CHECK_THROWS_AS(empty.sample(4, 0.5, rng), Error);
}

TEST_CASE("sampling frequencies track the priorities") {
  ReplayBuffer buf(8, 1.0, 1e-9);
  const std::vector<double> tds = {1.0, 2.0, 3.0, 4.0};
  for (double td : tds) buf.push(make_exp(td));
  const std::vector<double> p = buf.probabilities();
  Rng rng(1234);
  std::vector<int> counts(4, 0);
  const int draws = 40000;
  const ReplayBuffer::Batch batch = buf.sample(draws, 0.0, rng);
  for (std::size_t idx : batch.indices) counts[idx]++;
  for (int k = 0; k < 4; ++k) {
    const double freq = static_cast<double>(counts[k]) / draws;
    const double sigma = std::sqrt(p[k] * (1 - p[k]) / draws);
    CHECK(std::abs(freq - p[k]) < 4.0 * sigma);
  }
}

TEST_CASE("the correction exponent anneals linearly and clamps") {
  CHECK(annealed_beta(0, 1000) == 0.0);
  CHECK(annealed_beta(-5, 1000) == 0.0);
  CHECK(annealed_beta(500, 1000) == doctest::Approx(0.5));
  CHECK(annealed_beta(1000, 1000) == 1.0);
  CHECK(annealed_beta(2000, 1000) == 1.0);
}

}  // TEST_SUITE
