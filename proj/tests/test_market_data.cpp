#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "gvar/errors.hpp"
#include "gvar/market_data.hpp"

using namespace gvar;

namespace {

PriceSeries make_prices(std::vector<double> closes) {
    std::vector<PricePoint> pts;
    Date d{2020, 1, 1};
    for (double c : closes) {
        pts.push_back({d, c});
        d = Date::from_serial(d.serial() + 1);
    }
    return PriceSeries(std::move(pts));
}

} // namespace

TEST_SUITE("market_data") {

TEST_CASE("date parsing") {
    const Date d = parse_date("2008-09-23");
    CHECK(d.year == 2008);
    CHECK(d.month == 9);
    CHECK(d.day == 23);
    CHECK(d.iso() == "2008-09-23");
    CHECK(Date::from_serial(d.serial()) == d);

    const Date e = parse_date("23/09/2008", "%d/%m/%Y");
    CHECK(e == d);

    CHECK_THROWS_AS(parse_date("2008-13-01"), UnparseableDate);
    CHECK_THROWS_AS(parse_date("2008-02-30"), UnparseableDate);
    CHECK_THROWS_AS(parse_date("not-a-date"), UnparseableDate);
    CHECK_THROWS_AS(parse_date("2008-09-23extra"), UnparseableDate);
}

TEST_CASE("date ordering matches serial ordering") {
    const Date a{1999, 12, 31};
    const Date b{2000, 1, 1};
    CHECK(a < b);
    CHECK(b.serial() == a.serial() + 1);
    CHECK(Date{2000, 2, 29}.serial() + 1 == Date{2000, 3, 1}.serial()); // leap year
}

TEST_CASE("csv parsing happy path") {
    const std::string text = "date,close\n2008-09-22,1207.09\n2008-09-23,1188.22\n";
    const PriceSeries s = parse_price_csv(text);
    REQUIRE(s.size() == 2);
    CHECK(s.entries()[0].date.iso() == "2008-09-22");
    CHECK(s.entries()[0].close == 1207.09);
    CHECK(s.entries()[1].close == 1188.22);
}

TEST_CASE("csv rows are sorted by date") {
    const std::string text = "date,close\n2008-09-23,2.0\n2008-09-22,1.0\n";
    const PriceSeries s = parse_price_csv(text);
    CHECK(s.entries()[0].close == 1.0);
    CHECK(s.entries()[1].close == 2.0);
}

TEST_CASE("csv tolerates CRLF, blank lines and extra columns") {
    const std::string text =
        "open,date,close\r\n0.0,2008-09-22,1.5\r\n\r\n0.0,2008-09-23,2.5\r\n";
    const PriceSeries s = parse_price_csv(text);
    REQUIRE(s.size() == 2);
    CHECK(s.entries()[0].close == 1.5);
    CHECK(s.entries()[1].close == 2.5);
}

TEST_CASE("csv custom delimiter, column names and date format") {
    CsvOptions opts;
    opts.delimiter = ';';
    opts.date_column = "Day";
    opts.close_column = "Px";
    opts.date_format = "%d/%m/%Y";
    const std::string text = "Day;Px\n22/09/2008;1.25\n23/09/2008;1.5\n";
    const PriceSeries s = parse_price_csv(text, opts);
    REQUIRE(s.size() == 2);
    CHECK(s.entries()[0].date.iso() == "2008-09-22");
}

TEST_CASE("csv failure modes") {
    CHECK_THROWS_AS(parse_price_csv("date,price\n2020-01-01,1\n"), MissingColumn);
    CHECK_THROWS_AS(parse_price_csv("close\n1.0\n"), MissingColumn);
    CHECK_THROWS_AS(parse_price_csv("date,close\nbogus,1.0\n"), UnparseableDate);
    CHECK_THROWS_AS(parse_price_csv("date,close\n2020-01-01,0\n"), NonPositivePrice);
    CHECK_THROWS_AS(parse_price_csv("date,close\n2020-01-01,-3\n"), NonPositivePrice);
    CHECK_THROWS_AS(parse_price_csv("date,close\n2020-01-01\n"), MalformedRow);
    CHECK_THROWS_AS(parse_price_csv("date,close\n2020-01-01,abc\n"), MalformedRow);
    CHECK_THROWS_AS(parse_price_csv("date,close\n2020-01-01,1\n2020-01-01,2\n"), DuplicateDate);
    CHECK_THROWS_AS(parse_price_csv("date,close\n"), EmptySeries);
    CHECK_THROWS_AS(parse_price_csv(""), EmptySeries);
}

TEST_CASE("single-step log return") {
    const ReturnSeries r = log_returns(make_prices({100.0, 105.0}), 1, 1);
    REQUIRE(r.size() == 1);
    CHECK(r.entries()[0].value == doctest::Approx(0.048790164169432003).epsilon(1e-15));
    CHECK(r.entries()[0].date == Date{2020, 1, 2}); // labelled by the later row
    CHECK(r.horizon() == 1);
    CHECK(r.stride() == 1);
}

TEST_CASE("two-row horizon with matching stride") {
    const ReturnSeries r = log_returns(make_prices({100.0, 98.0, 90.0}), 2, 2);
    REQUIRE(r.size() == 1);
    CHECK(r.entries()[0].value == doctest::Approx(-0.10536051565782630).epsilon(1e-15));
    CHECK(r.entries()[0].date == Date{2020, 1, 3});
}

TEST_CASE("sampling grid: t = horizon, horizon + stride, ...") {
    const ReturnSeries r = log_returns(make_prices({1, 2, 4, 8, 16, 32, 64}), 2, 2);
    REQUIRE(r.size() == 3); // t = 2, 4, 6
    for (const auto& p : r.entries()) {
        CHECK(p.value == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    }
    CHECK(r.entries()[0].date == Date{2020, 1, 3});
    CHECK(r.entries()[1].date == Date{2020, 1, 5});
    CHECK(r.entries()[2].date == Date{2020, 1, 7});
}

TEST_CASE("entry count matches the sampling grid for all lengths") {
    for (int n = 2; n <= 12; ++n) {
        std::vector<double> closes(static_cast<std::size_t>(n), 1.0);
        for (int h = 1; h <= 3; ++h) {
            for (int s = 1; s <= 3; ++s) {
                if (n <= h) continue;
                const ReturnSeries r = log_returns(make_prices(closes), h, s);
                std::size_t expected = 0;
                for (int t = h; t < n; t += s) ++expected;
                CHECK(r.size() == expected);
            }
        }
    }
}

TEST_CASE("constant prices give exactly zero returns") {
    const ReturnSeries r = log_returns(make_prices({3.5, 3.5, 3.5, 3.5}), 1, 1);
    for (const auto& p : r.entries()) CHECK(p.value == 0.0);
}

TEST_CASE("returns are scale invariant") {
    const std::vector<double> base{100, 103, 99, 104, 101, 97};
    std::vector<double> scaled;
    for (double c : base) scaled.push_back(c * 7.25);
    const ReturnSeries a = log_returns(make_prices(base), 2, 2);
    const ReturnSeries b = log_returns(make_prices(scaled), 2, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.entries()[i].value == doctest::Approx(b.entries()[i].value).epsilon(1e-14));
    }
}

TEST_CASE("one-step returns telescope to the long-horizon return") {
    const std::vector<double> closes{100, 102, 99, 105, 108, 103};
    const ReturnSeries ones = log_returns(make_prices(closes), 1, 1);
    double sum = 0.0;
    for (const auto& p : ones.entries()) sum += p.value;
    const ReturnSeries whole = log_returns(make_prices(closes), 5, 5);
    REQUIRE(whole.size() == 1);
    CHECK(whole.entries()[0].value == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("log return argument errors") {
    CHECK_THROWS_AS(log_returns(make_prices({1.0, 2.0}), 2, 1), SeriesTooShort);
    CHECK_THROWS_AS(log_returns(make_prices({1.0, 2.0}), 0, 1), DomainError);
    CHECK_THROWS_AS(log_returns(make_prices({1.0, 2.0}), 1, 0), DomainError);
}

TEST_CASE("event labelling is strict") {
    std::vector<ReturnPoint> pts{
        {Date{2020, 1, 2}, -0.06},
        {Date{2020, 1, 3}, -0.05},
        {Date{2020, 1, 4}, -0.04},
        {Date{2020, 1, 5}, 0.01},
    };
    const ReturnSeries r(pts, 1, 1);
    const EventLabels labels = label_events(r, -0.05);
    REQUIRE(labels.flags.size() == 4);
    CHECK(labels.flags[0].is_abnormal);       // -0.06 < -0.05
    CHECK_FALSE(labels.flags[1].is_abnormal); // boundary -0.05 is not abnormal
    CHECK_FALSE(labels.flags[2].is_abnormal);
    CHECK_FALSE(labels.flags[3].is_abnormal);
    CHECK(labels.abnormal_count() == 1);
    CHECK(labels.flags[0].date == pts[0].date);
}

TEST_CASE("looser thresholds flag no fewer events") {
    std::vector<ReturnPoint> pts;
    Date d{2020, 1, 1};
    for (int i = 0; i < 50; ++i) {
        pts.push_back({d, -0.001 * static_cast<double>(i) * ((i % 2) ? 1.0 : -1.0)});
        d = Date::from_serial(d.serial() + 1);
    }
    const ReturnSeries r(pts, 1, 1);
    const auto tight = label_events(r, -0.04);
    const auto loose = label_events(r, -0.02);
    CHECK(loose.abnormal_count() >= tight.abnormal_count());
}

TEST_CASE("event threshold must be negative") {
    std::vector<ReturnPoint> pts{{Date{2020, 1, 2}, -0.06}};
    const ReturnSeries r(pts, 1, 1);
    CHECK_THROWS_AS(label_events(r, 0.0), DomainError);
    CHECK_THROWS_AS(label_events(r, 0.05), DomainError);
}

TEST_CASE("price series construction rejects bad input") {
    CHECK_THROWS_AS(PriceSeries(std::vector<PricePoint>{}), EmptySeries);
    CHECK_THROWS_AS(PriceSeries({{Date{2020, 1, 1}, 1.0}, {Date{2020, 1, 1}, 2.0}}), DuplicateDate);
    CHECK_THROWS_AS(PriceSeries({{Date{2020, 1, 1}, -1.0}}), NonPositivePrice);
}

} // TEST_SUITE
