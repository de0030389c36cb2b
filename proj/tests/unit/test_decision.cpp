#include <doctest.h>

#include <string>
#include <variant>

#include "slrscreen/decision.hpp"
#include "support/decision_gen.hpp"

using namespace slrscreen;

namespace {

ScreeningDecision expect_decision(const std::variant<ScreeningDecision, ParseError>& v) {
    REQUIRE(std::holds_alternative<ScreeningDecision>(v));
    return std::get<ScreeningDecision>(v);
}

ParseError expect_error(const std::variant<ScreeningDecision, ParseError>& v) {
    REQUIRE(std::holds_alternative<ParseError>(v));
    return std::get<ParseError>(v);
}

}  // namespace

TEST_CASE("a well-formed reply parses field by field") {
    const std::string raw =
        "Acceptance: Yes\n"
        "Authors: Just J.\n"
        "Article Title: Natural Language Processing for Innovation Search – Reviewing an "
        "Emerging Non-human Innovation Intermediary\n"
        "Publication Year: 2024\n"
        "Methodology: Theoretical paper\n"
        "Explanation: This article is highly relevant to the topic.";
    ScreeningDecision d = expect_decision(parse_decision(raw));
    CHECK(d.acceptance == Acceptance::Accept);
    CHECK(d.echoed_authors == "Just J.");
    CHECK(d.echoed_title ==
          "Natural Language Processing for Innovation Search – Reviewing an Emerging "
          "Non-human Innovation Intermediary");
    CHECK(d.echoed_year == 2024);
    CHECK(d.methodology == Methodology{MethodologyKind::Theoretical, {}});
    CHECK(d.explanation == "This article is highly relevant to the topic.");
}

TEST_CASE("a colon inside a value does not start a new field") {
    const std::string raw =
        "Acceptance: No\n"
        "Authors: Yan J.; Leidner D.E.; Peters U.\n"
        "Article Title: Global techno-politics: A review of the current status and "
        "opportunities for future research\n"
        "Publication Year: 2024\n"
        "Methodology: Theoretical paper\n"
        "Explanation: Not about the intersection of interest.";
    ScreeningDecision d = expect_decision(parse_decision(raw));
    CHECK(d.echoed_title ==
          "Global techno-politics: A review of the current status and opportunities for "
          "future research");
}

TEST_CASE("CRLF replies parse the same as LF") {
    const std::string lf = "Acceptance: Yes\nAuthors: A\nExplanation: e";
    std::string crlf = "Acceptance: Yes\r\nAuthors: A\r\nExplanation: e\r\n";
    CHECK(expect_decision(parse_decision(lf)) == expect_decision(parse_decision(crlf)));
}

TEST_CASE("chatter around the prescribed lines is ignored") {
    const std::string raw =
        "Here is my assessment of the article.\n"
        "\n"
        "Acceptance: No\n"
        "Authors: Shi Z.; Liu X.; Lee D.; Srinivasan K.\n"
        "Article Title: How Do Fast-Fashion Copycats Affect the Popularity of Premium "
        "Brands? Evidence from Social Media\n"
        "Publication Year: 2023\n"
        "Methodology: Empirical (Quantitative)\n"
        "Explanation: Tangential to the topic.\n"
        "\n"
        "Let me know if you need anything else.";
    ScreeningDecision d = expect_decision(parse_decision(raw));
    CHECK(d.acceptance == Acceptance::Reject);
    CHECK(d.methodology.kind == MethodologyKind::EmpiricalQuantitative);
    CHECK(d.echoed_year == 2023);
}

TEST_CASE("the first line carrying a key wins") {
    const std::string raw =
        "Acceptance: No\n"
        "Acceptance: Yes\n"
        "Explanation: first one counts\n"
        "Explanation: not this";
    ScreeningDecision d = expect_decision(parse_decision(raw));
    CHECK(d.acceptance == Acceptance::Reject);
    CHECK(d.explanation == "first one counts");
}

TEST_CASE("acceptance token is trimmed and case-folded") {
    CHECK(expect_decision(parse_decision("Acceptance:  YES  ")).acceptance ==
          Acceptance::Accept);
    CHECK(expect_decision(parse_decision("Acceptance: no")).acceptance == Acceptance::Reject);
}

TEST_CASE("missing fields degrade to empty, not errors") {
    ScreeningDecision d = expect_decision(parse_decision("Acceptance: Yes"));
    CHECK(d.echoed_authors.empty());
    CHECK(d.echoed_title.empty());
    CHECK_FALSE(d.echoed_year.has_value());
    CHECK(d.methodology == Methodology{MethodologyKind::Other, {}});
    CHECK(d.explanation.empty());
}

TEST_CASE("unparseable year degrades to absent") {
    ScreeningDecision d = expect_decision(
        parse_decision("Acceptance: Yes\nPublication Year: unknown"));
    CHECK_FALSE(d.echoed_year.has_value());
    d = expect_decision(parse_decision("Acceptance: Yes\nPublication Year: 2023 or so"));
    CHECK_FALSE(d.echoed_year.has_value());
    d = expect_decision(parse_decision("Acceptance: Yes\nPublication Year:  2019 "));
    CHECK(d.echoed_year == 2019);
}

TEST_CASE("parse failures carry the right kind") {
    CHECK(expect_error(parse_decision("")).kind == ParseErrorKind::EmptyReply);
    CHECK(expect_error(parse_decision("  \n \t ")).kind == ParseErrorKind::EmptyReply);

    ParseError missing = expect_error(parse_decision("I cannot evaluate this article."));
    CHECK(missing.kind == ParseErrorKind::MissingAcceptance);
    CHECK(missing.offending_text == "I cannot evaluate this article.");

    ParseError odd = expect_error(parse_decision("Acceptance: Maybe?\nAuthors: A"));
    CHECK(odd.kind == ParseErrorKind::UnrecognizedAcceptanceValue);
    CHECK(odd.offending_text == "Maybe?");

    // "Acceptance:" with no space after the colon is not the prescribed shape.
    CHECK(expect_error(parse_decision("Acceptance:Yes")).kind ==
          ParseErrorKind::MissingAcceptance);
}

TEST_CASE("lenient mode tolerates indentation and key case") {
    const std::string raw = "  acceptance: Yes\n\tAUTHORS: Someone";
    ScreeningDecision d = expect_decision(parse_decision(raw));
    CHECK(d.acceptance == Acceptance::Accept);
    CHECK(d.echoed_authors == "Someone");

    CHECK(expect_error(parse_decision(raw, {.strict = true})).kind ==
          ParseErrorKind::MissingAcceptance);
}

TEST_CASE("strict mode requires the exact prefix at column zero") {
    ParseOptions strict{.strict = true};
    CHECK(expect_decision(parse_decision("Acceptance: Yes", strict)).acceptance ==
          Acceptance::Accept);
    CHECK(expect_error(parse_decision(" Acceptance: Yes", strict)).kind ==
          ParseErrorKind::MissingAcceptance);
    CHECK(expect_error(parse_decision("acceptance: Yes", strict)).kind ==
          ParseErrorKind::MissingAcceptance);

    // Non-acceptance keys obey the same rule: the indented line is skipped.
    ScreeningDecision d =
        expect_decision(parse_decision("Acceptance: No\n  Authors: hidden", strict));
    CHECK(d.echoed_authors.empty());
}

TEST_CASE("map_methodology folds punctuation, spacing and case") {
    CHECK(map_methodology("Theoretical paper").kind == MethodologyKind::Theoretical);
    CHECK(map_methodology("theoretical-paper.").kind == MethodologyKind::Theoretical);
    CHECK(map_methodology("THEORETICAL PAPER").kind == MethodologyKind::Theoretical);
    CHECK(map_methodology("Empirical (Quantitative)").kind ==
          MethodologyKind::EmpiricalQuantitative);
    CHECK(map_methodology("empirical quantitative").kind ==
          MethodologyKind::EmpiricalQuantitative);
    CHECK(map_methodology("Empirical (Qualitative)").kind ==
          MethodologyKind::EmpiricalQualitative);

    Methodology other = map_methodology("Mixed methods");
    CHECK(other.kind == MethodologyKind::Other);
    CHECK(other.other == "Mixed methods");

    // Extra words break the taxonomy match; the text survives verbatim.
    other = map_methodology("Empirical (Quantitative) survey");
    CHECK(other.kind == MethodologyKind::Other);
    CHECK(other.other == "Empirical (Quantitative) survey");

    CHECK(map_methodology("") == Methodology{MethodologyKind::Other, {}});
}

TEST_CASE("methodology_label is canonical for the taxonomy and verbatim otherwise") {
    CHECK(methodology_label({MethodologyKind::Theoretical, {}}) == "Theoretical paper");
    CHECK(methodology_label({MethodologyKind::EmpiricalQuantitative, {}}) ==
          "Empirical (Quantitative)");
    CHECK(methodology_label({MethodologyKind::EmpiricalQualitative, {}}) ==
          "Empirical (Qualitative)");
    CHECK(methodology_label({MethodologyKind::Other, " odd text "}) == " odd text ");
}

TEST_CASE("render_decision produces the six prescribed lines") {
    ScreeningDecision d;
    d.acceptance = Acceptance::Accept;
    d.echoed_authors = "A. Author";
    d.echoed_title = "T";
    d.echoed_year = 2024;
    d.methodology = map_methodology("Theoretical paper");
    d.explanation = "Fine.";
    CHECK(render_decision(d) ==
          "Acceptance: Yes\n"
          "Authors: A. Author\n"
          "Article Title: T\n"
          "Publication Year: 2024\n"
          "Methodology: Theoretical paper\n"
          "Explanation: Fine.");

    ScreeningDecision empty;
    CHECK(render_decision(empty) ==
          "Acceptance: No\n"
          "Authors: \n"
          "Article Title: \n"
          "Publication Year: \n"
          "Methodology: \n"
          "Explanation: ");
}

TEST_CASE("parse of render is the identity on canonical decisions") {
    testsupport::DecisionGen gen(96321);
    for (int iter = 0; iter < 1000; ++iter) {
        ScreeningDecision d = gen.random_decision();
        const std::string rendered = render_decision(d);
        CAPTURE(rendered);
        auto lenient = parse_decision(rendered);
        REQUIRE(std::holds_alternative<ScreeningDecision>(lenient));
        CHECK(std::get<ScreeningDecision>(lenient) == d);

        auto strict = parse_decision(rendered, {.strict = true});
        REQUIRE(std::holds_alternative<ScreeningDecision>(strict));
        CHECK(std::get<ScreeningDecision>(strict) == d);
    }
}
