use std::path::PathBuf;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

use read_api::{documents, router, AppState, Loaded, ReplicationSource, ServiceConfig};
use read_core::advisor::AdvisorConfig;
use read_core::{
    build_design, load_dataset, render_report, train, ColumnMap, DesignConfig, DesignMode,
    ReportFormat, Resources, TrainedModel,
};
use read_core::replication::FeatureSource;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn mini_resources() -> Resources {
    let dir = fixtures().join("mini");
    Resources::load(&dir, Some(&dir.join("sentiwordnet.tsv")), Some(&dir.join("zipf.tsv"))).unwrap()
}

fn planted_model() -> TrainedModel {
    let data = load_dataset(fixtures().join("planted_pairs.csv"), &ColumnMap::default()).unwrap();
    let features = data.feature_map(FeatureSource::Dataset);
    let design = build_design(&data.pairs(), &features, &DesignConfig::with_mode(DesignMode::Mirrored)).unwrap();
    train(&design).unwrap()
}

fn loaded(strict: bool) -> Loaded {
    Loaded {
        resources: mini_resources(),
        model: planted_model(),
        advisor: AdvisorConfig::default(),
        strict,
        report: None,
    }
}

fn app(strict: bool) -> Router {
    router(AppState::ready(loaded(strict)), &ServiceConfig::new("unused", "unused"))
}

async fn send(app: Router, req: Request<Body>) -> (StatusCode, String) {
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn get(uri: &str) -> Request<Body> {
    Request::get(uri).body(Body::empty()).unwrap()
}

fn post(uri: &str, body: impl Into<Body>) -> Request<Body> {
    Request::post(uri)
        .header("content-type", "application/json")
        .body(body.into())
        .unwrap()
}

fn parse(body: &str) -> Value {
    serde_json::from_str(body).unwrap()
}

#[tokio::test]
async fn features_of_fixture_word() {
    let (status, body) = send(app(false), get("/api/features/help")).await;
    assert_eq!(status, StatusCode::OK);
    let doc = parse(&body);
    assert_eq!(doc["schema_version"], 1);
    let f = &doc["features"];
    // help: 3 synsets; co-lemmas assist, aid, facilitate, assistance; one
    // hypernym (act); max positivity 0.375 from the noun sense.
    assert_eq!(f["definitions"], 3);
    assert_eq!(f["synonyms"], 4);
    assert_eq!(f["hypernyms"], 1);
    assert_eq!(f["hyponyms"], 0);
    assert_eq!(f["word_length"], 4);
    assert_eq!(f["syllables"], 1);
    assert_eq!(f["pos_max"], 0.375);
    assert_eq!(f["neg_max"], 0.0);
    assert_eq!(f["emotionality"], 0.375);
    assert_eq!(f["frequency"], 5.9);
    assert_eq!(doc["coverage"]["lexicon_oov"], false);
}

#[tokio::test]
async fn unknown_word_is_flagged_not_rejected() {
    let (status, body) = send(app(false), get("/api/features/zzqx")).await;
    assert_eq!(status, StatusCode::OK);
    let doc = parse(&body);
    assert_eq!(doc["coverage"]["lexicon_oov"], true);
    assert_eq!(doc["coverage"]["frequency_oov"], true);
    for k in ["definitions", "synonyms", "hypernyms", "hyponyms"] {
        assert_eq!(doc["features"][k], 0, "{k}");
    }
    assert_eq!(doc["features"]["frequency"], 0.0);
}

#[tokio::test]
async fn empty_word_segment_is_not_found() {
    let (status, _) = send(app(false), get("/api/features/")).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn unavailable_before_loading() {
    let app = router(AppState::default(), &ServiceConfig::new("unused", "unused"));
    for req in [
        get("/api/features/help"),
        post("/api/pair", r#"{"word_a":"help","word_b":"aid"}"#),
        post("/api/annotate", r#"{"text":"help"}"#),
        get("/api/replication/report"),
        get("/api/health"),
    ] {
        let (status, _) = send(app.clone(), req).await;
        assert_eq!(status, StatusCode::SERVICE_UNAVAILABLE);
    }
}

#[tokio::test]
async fn identical_words_tie() {
    let (status, body) = send(app(false), post("/api/pair", r#"{"word_a":"help","word_b":"help"}"#)).await;
    assert_eq!(status, StatusCode::OK);
    let doc = parse(&body);
    assert_eq!(doc["outcome"], "tie");
    assert_eq!(doc["margin"], 0.0);
    assert!(doc["winner"].is_null());
}

#[tokio::test]
async fn pair_winner_follows_planted_coefficients() {
    let model = planted_model();
    let coef = model.feature_coefficients();
    let (_, a) = send(app(false), get("/api/features/help")).await;
    let (_, b) = send(app(false), get("/api/features/facilitate")).await;
    let (a, b) = (parse(&a), parse(&b));
    let names = read_core::Feature::ALL.map(|f| f.name());
    let expected: f64 = names
        .iter()
        .enumerate()
        .map(|(i, n)| coef[i] * (a["features"][n].as_f64().unwrap() - b["features"][n].as_f64().unwrap()))
        .sum();
    // Planted rule: shorter and more frequent wins; help is 6 letters
    // shorter and 2.0 Zipf higher than facilitate.
    assert!(expected > 0.0);

    let (status, body) = send(
        app(false),
        post("/api/pair", r#"{"word_a":"help","word_b":"facilitate"}"#),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let doc = parse(&body);
    assert_eq!(doc["winner"], "help");
    assert_eq!(doc["outcome"], "a");
    assert!((doc["margin"].as_f64().unwrap() - expected).abs() < 1e-12);
    let sum: f64 = doc["contributions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["contribution"].as_f64().unwrap())
        .sum();
    assert!((sum - expected).abs() < 1e-12);

    let (_, swapped) = send(
        app(false),
        post("/api/pair", r#"{"word_a":"facilitate","word_b":"help"}"#),
    )
    .await;
    let swapped = parse(&swapped);
    assert_eq!(swapped["winner"], "help");
    assert_eq!(swapped["margin"].as_f64().unwrap(), -doc["margin"].as_f64().unwrap());
}

#[tokio::test]
async fn malformed_pair_requests() {
    for body in [
        "",
        "{",
        r#"{"word_a":"help"}"#,
        r#"{"word_a":"help","word_b":3}"#,
        r#"["help","aid"]"#,
        r#"{"word_a":"","word_b":"aid"}"#,
    ] {
        let (status, resp) = send(app(false), post("/api/pair", body)).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
        assert_eq!(parse(&resp)["error"]["status"], 400);
    }
}

#[tokio::test]
async fn strict_mode_rejects_unknown_words() {
    let body = r#"{"word_a":"help","word_b":"zzqx"}"#;
    let (status, _) = send(app(true), post("/api/pair", body)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, resp) = send(app(false), post("/api/pair", body)).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(parse(&resp)["coverage_b"]["lexicon_oov"], true);
}

#[tokio::test]
async fn annotate_empty_text() {
    let (status, body) = send(app(false), post("/api/annotate", r#"{"text":""}"#)).await;
    assert_eq!(status, StatusCode::OK);
    let doc = parse(&body);
    assert_eq!(doc["format"], "read-annotations");
    assert_eq!(doc["annotations"], Value::Array(vec![]));
}

#[tokio::test]
async fn annotate_matches_library_output() {
    let text = "Please help me buy a big car quickly.";
    let (status, body) = send(
        app(false),
        post("/api/annotate", serde_json::json!({ "text": text }).to_string()),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let expected = read_api::annotation_document(&loaded(false), text).unwrap().to_json().unwrap();
    assert_eq!(body, expected);
    let doc = parse(&body);
    let words: Vec<&str> = doc["annotations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["word"].as_str().unwrap())
        .collect();
    assert!(words.contains(&"help") && words.contains(&"car"));
    assert!(!words.contains(&"me"), "stop words are skipped");
}

#[tokio::test]
async fn annotate_limits() {
    let big = serde_json::json!({ "text": "help ".repeat(20_000) }).to_string();
    let (status, _) = send(app(false), post("/api/annotate", big)).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
    let (status, _) = send(app(false), post("/api/annotate", r#"{"txt":"help"}"#)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn report_not_configured() {
    let (status, _) = send(app(false), get("/api/replication/report")).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn report_served_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let resources = mini_resources();
    resources.write_cache(dir.path().join("cache.json")).unwrap();
    planted_model().save(dir.path().join("model.json")).unwrap();
    std::fs::write(dir.path().join("map.toml"), "[columns]\nword = \"word\"\npair_id = \"pair_id\"\nselection_rate = \"selection_rate\"\nn_responses = \"n_responses\"\n\n[features]\ndefinitions = \"definitions\"\nsynonyms = \"synonyms\"\nhypernyms = \"hypernyms\"\nhyponyms = \"hyponyms\"\nword_length = \"word_length\"\nsyllables = \"syllables\"\npos_max = \"pos_max\"\nneg_max = \"neg_max\"\nemotionality = \"emotionality\"\nfrequency = \"frequency\"\n").unwrap();
    let mut cfg = ServiceConfig::new(dir.path().join("cache.json"), dir.path().join("model.json"));
    cfg.replication = Some(ReplicationSource {
        data: fixtures().join("planted_pairs.csv"),
        map: dir.path().join("map.toml"),
    });
    cfg.validate().unwrap();
    let app = router(AppState::ready(Loaded::load(&cfg).unwrap()), &cfg);

    let (status, first) = send(app.clone(), get("/api/replication/report")).await;
    assert_eq!(status, StatusCode::OK);
    let (_, second) = send(app, get("/api/replication/report")).await;
    assert_eq!(first, second);

    let src = cfg.replication.as_ref().unwrap();
    let report = documents::replication_report(&src.data, &src.map, Some(&resources)).unwrap();
    assert_eq!(first, render_report(&report, ReportFormat::Json).unwrap());
    let doc = parse(&first);
    assert_eq!(doc["format"], "read-replication-report");
    assert_eq!(doc["summary"]["pair_count"], 50);
}

#[tokio::test]
async fn static_files_served_at_root() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<html>ui</html>").unwrap();
    let mut cfg = ServiceConfig::new("unused", "unused");
    cfg.static_dir = Some(dir.path().to_path_buf());
    let app = router(AppState::ready(loaded(false)), &cfg);
    let (status, body) = send(app.clone(), get("/")).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, "<html>ui</html>");
    let (status, _) = send(app, get("/api/health")).await;
    assert_eq!(status, StatusCode::OK);
}

#[tokio::test]
async fn load_failure_stops_the_server() {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let cfg = ServiceConfig::new("/nonexistent/cache.json", "/nonexistent/model.json");
    let result = tokio::time::timeout(std::time::Duration::from_secs(10), read_api::serve_on(listener, cfg))
        .await
        .expect("server should stop on its own");
    assert!(result.is_err());
}

#[test]
fn config_validation_names_missing_files() {
    let cfg = ServiceConfig::new("/nonexistent/cache.json", "/nonexistent/model.json");
    let err = cfg.validate().unwrap_err().to_string();
    assert!(err.contains("/nonexistent/cache.json"), "{err}");
}
