use chrono::NaiveDate;
use scout_core::intelligence::{novelty_for_age, novelty_from};

pub fn date(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}

pub fn fresh_uncited_patent_is_fully_novel() {
    assert_eq!(novelty_from(date(2026, 1, 1), 0, date(2026, 1, 1)).unwrap(), 1.0);
    assert_eq!(novelty_for_age(0.0, 0), 1.0);
}

pub fn ten_years_four_citations() {
    // 0.5 * e^-1 + 0.5 * 1/5, evaluated separately: e^-1 = 0.36787944117144233
    let expected: f64 = 0.5 * 0.36787944117144233 + 0.1;
    assert!((expected - 0.283940).abs() < 1e-6);
    assert!((novelty_for_age(10.0, 4) - 0.283940).abs() < 1e-6);
    // ten calendar years lie half a day either side of 10 * 365.25 days
    let now = date(2026, 1, 1);
    let low = novelty_from(now - chrono::Days::new(3653), 4, now).unwrap();
    let high = novelty_from(now - chrono::Days::new(3652), 4, now).unwrap();
    assert!(low < expected && expected < high);
    assert!((low - 0.283940).abs() < 1e-4 && (high - 0.283940).abs() < 1e-4);
}

pub fn novelty_criterion() {
    fresh_uncited_patent_is_fully_novel();
    ten_years_four_citations();
}
