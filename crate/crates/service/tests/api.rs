use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use graphlet_service::{app, ServiceConfig};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn service() -> Router {
    app(ServiceConfig { parallel: graphlet_core::ParallelConfig::serial(), ..ServiceConfig::default() })
}

async fn call(app: &Router, method: &str, uri: &str, body: impl Into<Body>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).body(body.into()).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

async fn upload(app: &Router, edges: &str) -> String {
    let (status, body) = call(app, "POST", "/graphs", edges.to_string()).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    body["id"].as_str().unwrap().to_string()
}

async fn ops(app: &Router, id: &str, ops: Value) -> (StatusCode, Value) {
    call(app, "POST", &format!("/graphs/{id}/selection/ops"), json!({ "ops": ops }).to_string()).await
}

const K4: &str = "10 20\n10 30\n10 40\n20 30\n20 40\n30 40\n";

#[tokio::test]
async fn upload_returns_census() {
    let app = service();
    let (status, body) = call(&app, "POST", "/graphs", K4).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["n"], 4);
    assert_eq!(body["m"], 6);
    assert_eq!(body["counts"]["g4_1"], 1);
    assert_eq!(body["counts"]["g3_1"], 4);
    assert_eq!(body["counts"]["g4_2"], 0);
    let id = body["id"].as_str().unwrap();
    let (status, counts) = call(&app, "GET", &format!("/graphs/{id}/counts"), Body::empty()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(counts["counts"], body["counts"]);
    assert_eq!(counts["selection"]["n"], 0);
}

#[tokio::test]
async fn bad_uploads() {
    let app = service();
    let (status, body) = call(&app, "POST", "/graphs", "").await;
    assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
    let (status, body) = call(&app, "POST", "/graphs", "1 2\n3 x\n").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["code"], "parse_error");
    assert_eq!(body["detail"]["line"], 2);

    let small = app_with_cap(2);
    let (status, body) = call(&small, "POST", "/graphs", "1 2\n2 3\n3 1\n").await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE, "{body}");
}

fn app_with_cap(max_edges: usize) -> Router {
    app(ServiceConfig { max_edges, parallel: graphlet_core::ParallelConfig::serial(), ..ServiceConfig::default() })
}

#[tokio::test]
async fn unknown_ids_and_invalid_parameters() {
    let app = service();
    let (status, body) = call(&app, "GET", "/graphs/nope/counts", Body::empty()).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["code"], "not_found");

    let id = upload(&app, K4).await;
    for q in ["k=5", "k=x", "scope=sideways", "source=elsewhere"] {
        let (status, _) = call(&app, "GET", &format!("/graphs/{id}/gfd?{q}"), Body::empty()).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{q}");
    }
    for q in ["", "?pattern=hexagon"] {
        let (status, _) = call(&app, "GET", &format!("/graphs/{id}/edges/weights{q}"), Body::empty()).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{q}");
    }
    let (status, _) = call(&app, "POST", &format!("/graphs/{id}/selection/ops"), "{not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = ops(&app, &id, json!([{ "op": "teleport" }])).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn gfd_of_graph_and_selection() {
    let app = service();
    let id = upload(&app, K4).await;
    let (status, body) = call(&app, "GET", &format!("/graphs/{id}/gfd?k=4"), Body::empty()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["classes"][0], "g4_1");
    assert_eq!(body["values"][0], 1.0);
    let (_, body) = call(&app, "GET", &format!("/graphs/{id}/gfd?k=3&source=selection"), Body::empty()).await;
    assert_eq!(body["all_zero"], true);
}

#[tokio::test]
async fn selection_ops_update_counts() {
    let app = service();
    let id = upload(&app, K4).await;
    let (status, body) =
        ops(&app, &id, json!([10, 20, 30, 40].map(|v| json!({ "op": "add_vertex", "vertex": v })))).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["counts"]["g4_1"], 1);
    assert_eq!(body["delta"]["g4_1"], 1);
    assert_eq!((body["n"].as_u64(), body["m"].as_u64()), (Some(4), Some(6)));

    let (_, body) = ops(&app, &id, json!([{ "op": "remove_vertex", "vertex": 30 }])).await;
    assert_eq!(body["counts"]["g3_1"], 1);
    assert_eq!(body["counts"]["g4_1"], 0);
    assert_eq!(body["delta"]["g4_1"], -1);
    assert_eq!(body["delta"]["g3_1"], -3);

    // adding an already active vertex changes nothing
    let (_, body) = ops(&app, &id, json!([{ "op": "add_vertex", "vertex": 10 }])).await;
    assert!(body["delta"].as_object().unwrap().values().all(|d| d == 0));

    let (_, body) = ops(&app, &id, json!([{ "op": "remove_edge", "src": 10, "dst": 20 }])).await;
    assert_eq!(body["counts"]["g3_2"], 1);
    assert_eq!(body["m"], 2);

    let (_, body) = ops(&app, &id, json!([{ "op": "set_vertices", "vertices": [10, 20, 30, 40] }])).await;
    assert_eq!(body["counts"]["g4_2"], 1, "the removed edge stays removed: {body}");
    let (_, body) = ops(&app, &id, json!([{ "op": "add_edge", "src": 10, "dst": 20 }])).await;
    assert_eq!(body["counts"]["g4_1"], 1);
    let (_, body) = ops(&app, &id, json!([{ "op": "clear" }])).await;
    assert_eq!(body["n"], 0);
    assert_eq!(body["counts"]["g4_1"], 0);
}

#[tokio::test]
async fn invalid_batches_are_not_applied() {
    let app = service();
    let id = upload(&app, "1 2\n2 3\n3 4\n").await;
    let (status, body) =
        ops(&app, &id, json!([{ "op": "add_vertex", "vertex": 1 }, { "op": "add_vertex", "vertex": 99 }])).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["code"], "invalid_request");
    let (status, _) = ops(&app, &id, json!([{ "op": "add_edge", "src": 1, "dst": 3 }])).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (_, counts) = call(&app, "GET", &format!("/graphs/{id}/counts"), Body::empty()).await;
    assert_eq!(counts["selection"]["n"], 0);
}

#[tokio::test]
async fn sequence_numbers_are_echoed() {
    let app = service();
    let id = upload(&app, K4).await;
    let body = json!({ "seq": 41, "ops": [{ "op": "add_vertex", "vertex": 10 }] }).to_string();
    let (_, resp) = call(&app, "POST", &format!("/graphs/{id}/selection/ops"), body).await;
    assert_eq!(resp["seq"], 41);
}

#[tokio::test]
async fn star_weights_on_a_star() {
    let app = service();
    let id = upload(&app, "0 1\n0 2\n0 3\n0 4\n0 5\n").await;
    let (status, body) = call(&app, "GET", &format!("/graphs/{id}/edges/weights?pattern=star4"), Body::empty()).await;
    assert_eq!(status, StatusCode::OK);
    let edges = body["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 5);
    // each spoke lies in C(4, 2) three-stars
    assert!(edges.iter().all(|e| e["weight"] == 6), "{body}");
}

#[tokio::test]
async fn clique_weights_and_vertex_triangles() {
    let app = service();
    let mut edges = String::new();
    for a in 0..5 {
        for b in a + 1..5 {
            edges.push_str(&format!("{a} {b}\n"));
        }
    }
    edges.push_str("4 5\n");
    let id = upload(&app, &edges).await;
    let (_, body) = call(&app, "GET", &format!("/graphs/{id}/edges/weights?pattern=clique4"), Body::empty()).await;
    for e in body["edges"].as_array().unwrap() {
        let pendant = e["src"] == 5 || e["dst"] == 5;
        assert_eq!(e["weight"], if pendant { 0 } else { 3 }, "{e}");
    }
    let tri: Vec<u64> = body["vertices"].as_array().unwrap().iter().map(|v| v["triangles"].as_u64().unwrap()).collect();
    let ids: Vec<u64> = body["vertices"].as_array().unwrap().iter().map(|v| v["id"].as_u64().unwrap()).collect();
    for (id, t) in ids.iter().zip(&tri) {
        assert_eq!(*t, if *id == 5 { 0 } else { 6 });
    }
}

#[tokio::test]
async fn audit_after_random_ops() {
    use rand::{Rng, SeedableRng};
    let app = service();
    let g = graphlet_core::generators::gnp(30, 0.2, 5);
    let mut text = String::new();
    for (a, b) in g.edges() {
        text.push_str(&format!("{a} {b}\n"));
    }
    let id = upload(&app, &text).await;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let (a, b) = g.edges()[rng.gen_range(0..g.num_edges())];
        let op = match rng.gen_range(0..4) {
            0 => json!({ "op": "add_vertex", "vertex": a }),
            1 => json!({ "op": "remove_vertex", "vertex": b }),
            2 => json!({ "op": "add_edge", "src": a, "dst": b }),
            _ => json!({ "op": "remove_edge", "src": a, "dst": b }),
        };
        let (status, body) = ops(&app, &id, json!([op])).await;
        assert_eq!(status, StatusCode::OK, "{body}");
    }
    let (status, body) = call(&app, "GET", &format!("/graphs/{id}/audit"), Body::empty()).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["ok"], true);
}

#[tokio::test]
async fn weight_sums_match_global_counts() {
    let app = service();
    let g = graphlet_core::generators::gnp(25, 0.3, 11);
    let text: String = g.edges().iter().map(|(a, b)| format!("{a} {b}\n")).collect();
    let (_, created) = call(&app, "POST", "/graphs", text).await;
    let id = created["id"].as_str().unwrap();
    // pattern, class, edges per graphlet
    for (pattern, class, per) in [("star4", "g4_5", 3), ("clique4", "g4_1", 6), ("triangle", "g3_1", 3), ("cycle4", "g4_4", 4)] {
        let (_, body) = call(&app, "GET", &format!("/graphs/{id}/edges/weights?pattern={pattern}"), Body::empty()).await;
        let sum: u64 = body["edges"].as_array().unwrap().iter().map(|e| e["weight"].as_u64().unwrap()).sum();
        assert_eq!(sum, per * created["counts"][class].as_u64().unwrap(), "{pattern}");
    }
}
