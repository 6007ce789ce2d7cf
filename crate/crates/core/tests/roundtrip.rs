use hwz_core::algebra::{parse_rat, CumulantSeries};
use hwz_core::cumulants::{scaled_cumulant_hurwitz, Ensemble, TraceMonomial};
use hwz_core::hurwitz::{hurwitz_table, HurwitzQuery, HurwitzTable, Kind, Route};
use hwz_core::identities::{run_suite, Suite, SuiteConfig};
use hwz_core::mc::{estimate_cumulants, McReport, SamplerConfig, Target};
use hwz_core::sym::{partitions_of, IntPartition};
use hwz_core::weingarten::{wg, CentralElement};
use hwz_core::Limits;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn roundtrip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let json = serde_json::to_string(x).unwrap();
    let back: T = serde_json::from_str(&json).unwrap();
    assert_eq!(&back, x, "{json}");
}

#[test]
fn hurwitz_tables_roundtrip_and_routes_agree() {
    let limits = Limits::default();
    for n in 1..=5 {
        for mu in partitions_of(n) {
            for kind in [Kind::Monotone, Kind::Strict] {
                for genus in 0..=1 {
                    let q = HurwitzQuery::new(mu.clone(), None, genus, kind).unwrap();
                    let dfs = hurwitz_table(&q, Route::Dfs, &limits).unwrap();
                    let fast = hurwitz_table(&q, Route::Fast, &limits).unwrap();
                    assert_eq!(dfs, fast, "{mu} g={genus} {kind}");
                    roundtrip::<HurwitzTable>(&dfs);
                }
            }
        }
    }
}

#[test]
fn counts_serialize_as_decimal_strings() {
    let q = HurwitzQuery::new("1,1,1,1".parse().unwrap(), None, 1, Kind::Monotone).unwrap();
    let t = hurwitz_table(&q, Route::Auto, &Limits::default()).unwrap();
    let v = serde_json::to_value(&t).unwrap();
    for row in v["rows"].as_array().unwrap() {
        let s = row["summed"].as_str().expect("string count");
        assert!(s.chars().all(|c| c.is_ascii_digit()));
    }
}

#[test]
fn partitions_serialize_decreasing() {
    let p: IntPartition = "1,3,1".parse().unwrap();
    assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1,1]");
    roundtrip(&p);
}

#[test]
fn series_and_weingarten_roundtrip() {
    let limits = Limits::default();
    for mu in ["1", "2", "1,1", "2,1"] {
        for e in [Ensemble::Wishart, Ensemble::Inverse] {
            let m = TraceMonomial::new(mu.parse().unwrap(), e).unwrap();
            roundtrip::<CumulantSeries>(&scaled_cumulant_hurwitz(&m, 2, &limits).unwrap());
        }
    }
    for n in 1..=4 {
        roundtrip::<CentralElement>(&wg(n, &limits).unwrap());
    }
}

#[test]
fn reports_roundtrip() {
    let limits = Limits::default();
    let cfg = SuiteConfig { nmax: 3, gmax: 1, dmax: 1 };
    for r in run_suite(Suite::All, cfg, &limits) {
        roundtrip(&r);
    }
    let mc = SamplerConfig::from_c(3, &parse_rat("2").unwrap(), 200, 7, vec![Target::TrW, Target::VarTrW]).unwrap();
    let report = estimate_cumulants(&mc, &limits).unwrap();
    let back: McReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(back.estimates.len(), report.estimates.len());
    assert_eq!(back.config, report.config);
}
