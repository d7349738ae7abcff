use pvkit_web::{explore_grading, list_entries, render_diagram, run_entry};

#[test]
fn diagram_text() {
    let text = render_diagram("c", 7, "1, 7").unwrap();
    assert!(text.starts_with("C7{1,7}\n(o)---o---o---o---o---o=<=(o)\n"));
    assert!(text.contains("2w5[A5] (dim 21)"));
    assert!(render_diagram("Q", 3, "1").is_err());
    assert!(render_diagram("B", 3, "4").is_err());
}

#[test]
fn grading_pieces_add_up() {
    let v: serde_json::Value = serde_json::from_str(&explore_grading("E", 6, "1").unwrap()).unwrap();
    let pieces = v["pieces"].as_array().unwrap();
    let dims: Vec<u64> = pieces.iter().map(|p| p["dim"].as_u64().unwrap()).collect();
    // e6 = d(-1) + l + d(1)
    assert_eq!(dims, vec![46, 16]);
    assert_eq!(46 + 2 * 16, 78);
    assert_eq!(pieces[1]["roots"].as_array().unwrap().len(), 16);
    assert_eq!(v["summary"]["levi"], "D5 x C");
}

#[test]
fn entries_and_runs() {
    let list: serde_json::Value = serde_json::from_str(&list_entries()).unwrap();
    assert_eq!(list.as_array().unwrap().len(), 34);
    let report: serde_json::Value = serde_json::from_str(&run_entry("T2.2", "n=3", 0).unwrap()).unwrap();
    assert_eq!(report["status"], "pass");
    assert_eq!(report["character_dim"], 1);
    let report: serde_json::Value = serde_json::from_str(&run_entry("T3.8", "", 1).unwrap()).unwrap();
    assert_eq!(report["parameters"], serde_json::json!({"n": 3, "m": 2}));
    assert!(run_entry("T3.8", "n=3 m", 0).is_err());
    assert!(run_entry("nope", "", 0).is_err());
}
