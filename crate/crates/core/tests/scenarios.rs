use meanexp::fields::FactoredInt;
use meanexp::scenario::{parse_scenario, preset, preset_text, run_scenario, PRESET_NAMES};

#[test]
fn presets_are_deterministic() {
    for name in PRESET_NAMES {
        let f = preset(name).unwrap();
        let a = serde_json::to_string(&run_scenario(&f).unwrap()).unwrap();
        let b = serde_json::to_string(&run_scenario(&f).unwrap()).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn presets_round_trip_through_json() {
    for name in PRESET_NAMES {
        let f = preset(name).unwrap();
        let again = parse_scenario(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(f, again);
        assert!(preset_text(name).unwrap().contains("\"version\": 1"));
    }
}

#[test]
fn reports_echo_pins() {
    let r = run_scenario(&preset("3").unwrap()).unwrap();
    let names: Vec<&str> = r.pins.iter().map(|p| p.name.as_str()).collect();
    assert!(names.contains(&"epsilon_linear"));
    assert!(names.contains(&"excluded_norms"));
    assert!(names.contains(&"archimedean"));
}

#[test]
fn intro_radicands() {
    let a = FactoredInt::from_factors(&[8, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53]).unwrap();
    let b = FactoredInt::from_factors(&[-59, 61, 67, 71, 73, 79, 83, 97, 101]).unwrap();
    assert_eq!(a.value().to_string(), "130356633908760178920");
    assert_eq!(b.value().to_string(), "-80285321329764931");
    // same field as Example 3
    let intro = run_scenario(&preset("intro").unwrap()).unwrap();
    let ex3 = run_scenario(&preset("3").unwrap()).unwrap();
    assert_eq!(intro.field.abs_disc, ex3.field.abs_disc);
    assert_eq!(intro.pinned, ex3.pinned);
}

#[test]
fn derived_runs() {
    let expect = [("1", 37u64, 1.0), ("2", 3853, 22.0), ("3", 1093, 13.0), ("4", 647, 9.0), ("5", 3923, 22.0)];
    for (name, ell, eps) in expect {
        let r = run_scenario(&preset(name).unwrap()).unwrap();
        assert_eq!(r.epsilon_derived, eps, "{name}");
        assert_eq!(r.derived.as_ref().unwrap().tv.ell_star_0, ell, "{name}");
    }
}

#[test]
fn critere_verdicts() {
    for name in ["1", "2", "3", "4", "5"] {
        let r = run_scenario(&preset(name).unwrap()).unwrap();
        assert!(r.critere.as_ref().unwrap().holds, "{name}");
    }
    let c = run_scenario(&preset("2").unwrap()).unwrap().critere.unwrap();
    assert_eq!((c.rho, c.t_dec, c.t_total, c.t_places_k), (21, 7, 15, 22));
    assert!(c.holds_place_count);
}
