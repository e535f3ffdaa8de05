#include <benchmark/benchmark.h>

#include "qbank/aiken.hpp"
#include "qbank/gift.hpp"
#include "qbank/moodlexml.hpp"
#include "qbank/validate.hpp"

#include "generators.hpp"

using namespace qbank;

namespace {

QuestionBank corpus(qtest::Profile profile, int questions) {
    qtest::Gen gen(12345);
    QuestionBank bank;
    while (static_cast<int>(bank.questions.size()) < questions) {
        QuestionBank chunk = gen.bank(profile, 10, false);
        for (auto& q : chunk.questions) bank.questions.push_back(std::move(q));
    }
    bank.questions.resize(questions);
    return bank;
}

void bm_aiken_parse(benchmark::State& state) {
    std::string text = emit_aiken(corpus(qtest::Profile::aiken, 100));
    for (auto _ : state) benchmark::DoNotOptimize(parse_aiken(text));
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}

void bm_aiken_emit(benchmark::State& state) {
    QuestionBank bank = corpus(qtest::Profile::aiken, 100);
    for (auto _ : state) benchmark::DoNotOptimize(emit_aiken(bank));
}

void bm_gift_parse(benchmark::State& state) {
    std::string text = emit_gift(corpus(qtest::Profile::gift, 100));
    for (auto _ : state) benchmark::DoNotOptimize(parse_gift(text));
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}

void bm_gift_emit(benchmark::State& state) {
    QuestionBank bank = corpus(qtest::Profile::gift, 100);
    for (auto _ : state) benchmark::DoNotOptimize(emit_gift(bank));
}

void bm_moodlexml_parse(benchmark::State& state) {
    std::string text = emit_moodlexml(corpus(qtest::Profile::moodlexml, 100));
    for (auto _ : state) benchmark::DoNotOptimize(parse_moodlexml(text));
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}

void bm_moodlexml_emit(benchmark::State& state) {
    QuestionBank bank = corpus(qtest::Profile::moodlexml, 100);
    for (auto _ : state) benchmark::DoNotOptimize(emit_moodlexml(bank));
}

void bm_validate(benchmark::State& state) {
    QuestionBank bank = corpus(qtest::Profile::gift, 100);
    for (auto _ : state) benchmark::DoNotOptimize(validate(bank));
}

}  // namespace

BENCHMARK(bm_aiken_parse);
BENCHMARK(bm_aiken_emit);
BENCHMARK(bm_gift_parse);
BENCHMARK(bm_gift_emit);
BENCHMARK(bm_moodlexml_parse);
BENCHMARK(bm_moodlexml_emit);
BENCHMARK(bm_validate);

BENCHMARK_MAIN();
