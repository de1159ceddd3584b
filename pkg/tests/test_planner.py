import pytest

from phasegame.errors import BadGrid, HorizonEmpty, UnknownGoalElement
from phasegame.planner import (build_compound_game, eval_priority,
                               load_scenario, plan_play, run_cognition,
                               select_goal_sets, visible_rewards)


def four_goals():
    return load_scenario("data:four_goals_scenario.json")


def base_doc():
    return {
        "name": "inline",
        "grid": ["...", "...", "..."],
        "start": [1, 1],
        "horizon": 1,
        "goal_phase": "data:goal_phase.json",
        "free_move_goal": "a",
        "objects": [
            {"id": "obj_x", "cell": [0, 0], "features": ["f1", "f2"],
             "goal": "e", "attractiveness": 1},
        ],
    }


# visibility -------------------------------------------------------------

def test_standing_on_object_reveals_everything():
    sc = four_goals()
    vis = visible_rewards(sc, (6, 3))
    assert vis["obj_e"] == frozenset({"egg", "oval", "pale"})


def test_beyond_horizon_reveals_nothing():
    sc = four_goals()
    vis = visible_rewards(sc, (8, 6))
    assert vis["obj_b2"] == frozenset()


def test_at_horizon_reveals_shortest_prefix():
    sc = four_goals()
    # obj_e has 3 features; at distance 2 of horizon 2 one shows
    vis = visible_rewards(sc, (4, 3))
    assert vis["obj_e"] == frozenset({"egg"})
    vis = visible_rewards(sc, (5, 3))
    assert vis["obj_e"] == frozenset({"egg", "oval"})


def test_reveal_counts_follow_scaled_ceiling():
    doc = base_doc()
    doc["grid"] = ["........."]
    doc["start"] = [0, 0]
    doc["horizon"] = 3
    doc["objects"] = [{"id": "o", "cell": [0, 0],
                       "features": ["a1", "a2", "a3", "a4", "a5"],
                       "goal": "e"}]
    sc = load_scenario(doc)
    for d, want in [(0, 5), (1, 4), (2, 3), (3, 2), (4, 0), (8, 0)]:
        assert len(visible_rewards(sc, (d, 0))["o"]) == want, d


# loading ----------------------------------------------------------------

def test_rejects_empty_grid():
    doc = base_doc()
    doc["grid"] = []
    with pytest.raises(BadGrid):
        load_scenario(doc)


def test_rejects_ragged_grid():
    doc = base_doc()
    doc["grid"] = ["...", ".."]
    with pytest.raises(BadGrid, match="equally long"):
        load_scenario(doc)


def test_rejects_unknown_grid_character():
    doc = base_doc()
    doc["grid"] = ["..x"]
    doc["objects"] = []
    with pytest.raises(BadGrid, match="unknown grid character"):
        load_scenario(doc)


def test_rejects_start_on_wall():
    doc = base_doc()
    doc["grid"] = ["#..", "...", "..."]
    doc["start"] = [0, 0]
    with pytest.raises(BadGrid, match="start"):
        load_scenario(doc)


def test_rejects_negative_horizon():
    doc = base_doc()
    doc["horizon"] = -1
    with pytest.raises(BadGrid, match="horizon"):
        load_scenario(doc)


def test_rejects_object_on_wall():
    doc = base_doc()
    doc["grid"] = ["#..", "...", "..."]
    doc["start"] = [1, 1]
    with pytest.raises(BadGrid, match="obj_x"):
        load_scenario(doc)


def test_rejects_goal_outside_generators():
    doc = base_doc()
    doc["objects"][0]["goal"] = "J123"
    with pytest.raises(UnknownGoalElement, match="generator"):
        load_scenario(doc)


def test_rejects_shared_goal_element():
    doc = base_doc()
    doc["objects"].append({"id": "obj_y", "cell": [2, 2],
                           "features": ["g"], "goal": "e"})
    with pytest.raises(UnknownGoalElement, match="share"):
        load_scenario(doc)


def test_rejects_foreign_free_move_goal():
    doc = base_doc()
    doc["free_move_goal"] = "zig"
    with pytest.raises(UnknownGoalElement, match="free_move_goal"):
        load_scenario(doc)


# goal ranking -----------------------------------------------------------

def test_priorities_of_known_goal_sets():
    sc = four_goals()
    assert eval_priority(sc, ["obj_e"]) == "1"
    assert eval_priority(sc, ["obj_b1", "obj_b2", "obj_e"]) == "1"
    assert eval_priority(sc, ["obj_b1", "obj_b3", "obj_e"]) == "b1"
    assert eval_priority(sc, ["obj_b1", "obj_b2", "obj_b3", "obj_e"]) == "b1"
    assert eval_priority(sc, [sc.objects["obj_e"]]) == "1"


def test_selection_keeps_the_two_largest_top_sets():
    sc = four_goals()
    sel = select_goal_sets(sc, list(sc.objects), must_include="obj_e")
    assert len(sel.candidates) == 8
    assert not sel.indistinguishable
    assert len(sel) == 2
    assert sel[0].goals == ("obj_b1", "obj_b2", "obj_e")
    assert sel[1].goals == ("obj_b2", "obj_b3", "obj_e")
    assert sel[0].priority == sel[1].priority == "1"
    assert sel[0].attractiveness == 9
    assert sel[1].attractiveness == 8


def test_selection_is_input_order_invariant():
    sc = four_goals()
    ids = list(sc.objects)
    a = select_goal_sets(sc, ids, must_include="obj_e")
    b = select_goal_sets(sc, list(reversed(ids)), must_include="obj_e")
    assert [c.goals for c in a] == [c.goals for c in b]
    assert [c.priority for c in a] == [c.priority for c in b]


def test_selection_collapses_on_degenerate_phase():
    doc = {
        "name": "alt",
        "grid": [".........",
                 ".........",
                 ".........",
                 ".........",
                 ".........",
                 ".........",
                 "........."],
        "start": [4, 3],
        "horizon": 2,
        "goal_phase": "data:goal_phase_alt.json",
        "free_move_goal": "a",
        "objects": [
            {"id": "obj_b1", "cell": [2, 5],
             "features": ["tall", "thin"], "goal": "J1a",
             "attractiveness": 2},
            {"id": "obj_b2", "cell": [2, 2],
             "features": ["blue", "box"], "goal": "b2",
             "attractiveness": 3},
            {"id": "obj_b3", "cell": [6, 5],
             "features": ["dark", "dusty"], "goal": "b3",
             "attractiveness": 1},
            {"id": "obj_e", "cell": [6, 3],
             "features": ["egg", "oval", "pale"], "goal": "e",
             "attractiveness": 4},
        ],
    }
    sc = load_scenario(doc)
    sel = select_goal_sets(sc, list(sc.objects), must_include="obj_e")
    assert sel.indistinguishable
    assert {c.priority for c in sel.candidates} == {"J123"}
    assert sel[0].goals == ("obj_b1", "obj_b2", "obj_b3", "obj_e")


# compound game ----------------------------------------------------------

def test_compound_vertex_count_is_product_of_projections():
    sc = four_goals()
    pg = build_compound_game(sc, ["obj_e", "obj_b2"])
    verts = pg.game.vertices
    move_part = {m for m, _ in verts}
    chain_part = {c for _, c in verts}
    assert len(verts) == len(move_part) * len(chain_part)
    assert len(chain_part) == (3 + 1) * (2 + 1)


def test_compound_payoffs_accumulate_images():
    sc = load_scenario("data:tiny_scenario.json")
    pg = build_compound_game(sc, ["obj_e"],
                             images={"obj_e": frozenset({"here"})})
    assert all(v != "" for v in pg.k.values())


def test_blocked_start_raises():
    doc = base_doc()
    doc["grid"] = [".#."]
    doc["start"] = [0, 0]
    doc["objects"] = [{"id": "obj_x", "cell": [0, 0],
                       "features": ["f1"], "goal": "e"}]
    sc = load_scenario(doc)
    with pytest.raises(HorizonEmpty):
        build_compound_game(sc, ["obj_x"])


def test_bad_mode_rejected():
    sc = load_scenario("data:tiny_scenario.json")
    with pytest.raises(ValueError):
        build_compound_game(sc, ["obj_e"], mode="dreamy")


# planning ---------------------------------------------------------------

def test_plan_objective_is_maximal_over_all_plays():
    doc = base_doc()
    doc["grid"] = ["..."]
    doc["start"] = [1, 0]
    doc["objects"] = [{"id": "obj_x", "cell": [2, 0],
                       "features": ["f1", "f2"], "goal": "e"}]
    sc = load_scenario(doc)
    from phasegame.planner import _enumerate_plays
    pg = build_compound_game(sc, ["obj_x"])
    lat = pg.lattice
    plan = plan_play(sc, ["obj_x"])
    objective = ",".join(plan.objective)
    for p in _enumerate_plays(pg.game):
        val = lat.join([pg.k[v] for v in p])
        assert not (objective != val and lat.leq(objective, val)), val


def test_walled_off_goal_is_reported():
    doc = base_doc()
    doc["grid"] = ["...", "###", "..."]
    doc["start"] = [0, 0]
    doc["horizon"] = 2
    doc["objects"] = [{"id": "obj_x", "cell": [0, 2],
                       "features": ["f1"], "goal": "e"}]
    sc = load_scenario(doc)
    plan = plan_play(sc, ["obj_x"])
    assert any("obj_x not reached within horizon" in line
               for line in plan.decision_log)


# cognition loop ---------------------------------------------------------

def test_tiny_scenario_completes_immediately():
    sc = load_scenario("data:tiny_scenario.json")
    trace = run_cognition(sc)
    assert trace.complete
    assert not trace.step_limit
    assert trace.header["steps_taken"] <= 2
    assert trace.final_images["obj_e"] == frozenset({"here"})


def test_full_scenario_completes_and_selects():
    sc = four_goals()
    trace = run_cognition(sc, max_steps=50)
    assert trace.complete
    assert trace.selections
    first = trace.selections[0]
    assert first["anchor"] == "obj_e"
    assert first["sets"][0]["priority"] == "1"


def test_images_grow_monotonically():
    sc = four_goals()
    trace = run_cognition(sc, max_steps=50)
    last = {}
    for entry in trace.entries:
        if "images" not in entry:
            continue
        for oid, feats in entry["images"].items():
            assert set(feats) >= set(last.get(oid, set())), oid
            last[oid] = feats


def test_empty_scenario_wanders_to_step_limit():
    sc = load_scenario("data:empty_scenario.json")
    trace = run_cognition(sc, max_steps=5, seed=1)
    assert trace.step_limit
    assert not trace.complete
    moves = [e for e in trace.entries if e["actor"] == "system"]
    assert moves and all(e["move"] == "wander" for e in moves)
    assert any("wander" in line for line in trace.decision_log)


def test_traces_are_deterministic():
    a = run_cognition(four_goals(), seed=3).to_json()
    b = run_cognition(four_goals(), seed=3).to_json()
    assert a == b


def test_trace_header_describes_world():
    sc = four_goals()
    trace = run_cognition(sc, max_steps=3)
    head = trace.header
    assert head["grid"] == sc.rows
    assert head["start"] == [4, 3]
    assert [o["id"] for o in head["objects"]] == sorted(sc.objects)
