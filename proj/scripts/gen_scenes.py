#!/usr/bin/env python3
"""Generates the bundled scene-graph documents from compact placement tables."""
import json
import re
from pathlib import Path

PICKABLE = {
    "cola_can", "banana_peel", "rotting_apple", "mop", "plate", "fork", "knife",
    "spoon", "glass", "flower", "mainboard", "cpu", "gpu", "ram", "ssd", "psu",
    "dirty_clothes", "detergent",
}

EXTRA_AFFORDANCES = {
    "mop": ["mop_floor", "clean_mop"],
    "rubbish_bin": ["dispose_into"],
    "kitchen_sink": ["clean_mop_at"],
    "bathroom_sink": ["clean_mop_at"],
    "bathroom_sink_2": ["clean_mop_at"],
    "charging_station": ["recharge_at"],
    "dining_table": ["place_on"],
    "washing_machine": ["load", "run"],
    "dirty_clothes": ["wash"],
}

STATES = {"mop": {"clean": True}}
INACCESSIBLE = set()  # per-scene override below


def display_name(item_id: str) -> str:
    return re.sub(r"_\d+$", "", item_id).replace("_", " ")


def make_item(item_id: str, inaccessible: set) -> dict:
    affordances = []
    if item_id in PICKABLE:
        affordances.append("pick")
    affordances += EXTRA_AFFORDANCES.get(item_id, [])
    return {
        "id": item_id,
        "name": display_name(item_id),
        "accessible": item_id not in inaccessible,
        "states": STATES.get(item_id, {}),
        "affordances": affordances,
    }


def make_scene(name, floors, adjacency, placement, inaccessible=frozenset()):
    neighbor_map = {}
    for a, b in adjacency:
        neighbor_map.setdefault(a, []).append(b)
    doc = {"name": name, "floors": []}
    for floor_id, room_ids in floors:
        rooms = []
        for room_id in room_ids:
            rooms.append({
                "id": room_id,
                "name": display_name(room_id),
                "neighbors": sorted(neighbor_map.get(room_id, [])),
                "items": [make_item(i, inaccessible) for i in placement.get(room_id, [])],
            })
        doc["floors"].append({"id": floor_id, "rooms": rooms})
    n_rooms = sum(len(r) for _, r in floors)
    n_items = sum(len(v) for v in placement.values())
    return doc, n_rooms, n_items


SCENES = {}

SCENES["parole"] = make_scene(
    "parole",
    [("floor_1", ["corridor", "hub", "kitchen", "living_room", "dining_room",
                  "bathroom_1", "bedroom_1"])],
    [("corridor", "kitchen"), ("corridor", "living_room"), ("corridor", "dining_room"),
     ("corridor", "bathroom_1"), ("corridor", "bedroom_1"), ("corridor", "hub"),
     ("kitchen", "living_room"), ("kitchen", "dining_room"), ("kitchen", "bathroom_1"),
     ("living_room", "hub")],
    {
        "kitchen": ["banana_peel", "rotting_apple", "rubbish_bin", "kitchen_sink",
                    "refrigerator", "microwave", "plate", "glass"],
        "living_room": ["cola_can", "sofa", "tv", "fork", "spoon"],
        "dining_room": ["dining_table", "knife", "flower", "bookshelf", "ram"],
        "bathroom_1": ["mop", "bathroom_sink", "mirror"],
        "bedroom_1": ["bed", "wardrobe", "lamp", "mainboard", "cpu"],
        "corridor": ["plant"],
        "hub": ["charging_station", "psu", "gpu", "ssd"],
    },
)

SCENES["allensville"] = make_scene(
    "allensville",
    [("floor_1", ["corridor", "hub", "kitchen", "living_room", "dining_room", "pantry",
                  "bathroom_1", "laundry_room", "bedroom_1", "bedroom_2", "office"])],
    [("corridor", "kitchen"), ("corridor", "living_room"), ("corridor", "dining_room"),
     ("corridor", "bathroom_1"), ("corridor", "bedroom_1"), ("corridor", "bedroom_2"),
     ("corridor", "office"), ("corridor", "hub"),
     ("kitchen", "pantry"), ("kitchen", "dining_room"), ("kitchen", "living_room"),
     ("bathroom_1", "laundry_room"), ("living_room", "hub")],
    {
        "kitchen": ["banana_peel", "rotting_apple", "rubbish_bin", "kitchen_sink",
                    "refrigerator", "microwave", "oven", "toaster", "plate", "ssd"],
        "pantry": ["glass", "coffee_machine"],
        "living_room": ["cola_can", "sofa", "armchair", "tv", "fork"],
        "dining_room": ["dining_table", "knife", "flower", "rug", "gpu"],
        "bathroom_1": ["mop", "bathroom_sink", "mirror"],
        "laundry_room": ["washing_machine", "lamp_2"],
        "bedroom_1": ["bed_1", "wardrobe", "lamp_1", "mainboard", "cpu"],
        "bedroom_2": ["bed_2", "spoon", "plant_2", "ram"],
        "office": ["desk", "printer", "bookshelf"],
        "corridor": ["plant_1"],
        "hub": ["charging_station", "psu"],
    },
)

SCENES["shelbiana"] = make_scene(
    "shelbiana",
    [("floor_1", ["corridor", "hub", "kitchen", "living_room", "dining_room",
                  "bathroom_1", "staircase"]),
     ("floor_2", ["bedroom_1", "bedroom_2", "bathroom_2", "office", "storage"])],
    [("corridor", "kitchen"), ("corridor", "living_room"), ("corridor", "dining_room"),
     ("corridor", "bathroom_1"), ("corridor", "hub"), ("corridor", "staircase"),
     ("kitchen", "living_room"), ("kitchen", "dining_room"), ("living_room", "hub"),
     ("living_room", "staircase"), ("staircase", "bedroom_1"), ("staircase", "bedroom_2"),
     ("staircase", "bathroom_2"), ("staircase", "office"), ("staircase", "storage")],
    {
        "kitchen": ["banana_peel", "rubbish_bin", "kitchen_sink", "refrigerator",
                    "microwave", "plate"],
        "living_room": ["cola_can", "rotting_apple", "sofa", "tv", "fork"],
        "dining_room": ["dining_table", "knife", "flower"],
        "bathroom_1": ["mop", "bathroom_sink"],
        "corridor": ["plant"],
        "hub": ["charging_station", "psu"],
        "bedroom_1": ["bed_1", "wardrobe", "lamp", "cpu"],
        "bedroom_2": ["bed_2", "mirror", "spoon"],
        "bathroom_2": ["bathroom_sink_2"],
        "office": ["desk", "mainboard", "gpu"],
        "storage": ["bookshelf", "ram", "ssd", "glass"],
    },
    inaccessible={"mirror"},
)

SCENES["kemblesville"] = make_scene(
    "kemblesville",
    [("floor_1", ["corridor", "hub", "kitchen", "living_room", "dining_room",
                  "bathroom_1", "bedroom_1", "laundry_room", "storage"])],
    [("corridor", "kitchen"), ("corridor", "living_room"), ("corridor", "dining_room"),
     ("corridor", "bathroom_1"), ("corridor", "bedroom_1"), ("corridor", "hub"),
     ("corridor", "laundry_room"), ("corridor", "storage"), ("kitchen", "dining_room")],
    {
        "bedroom_1": ["dirty_clothes", "bed", "wardrobe"],
        "storage": ["detergent", "bookshelf"],
        "laundry_room": ["washing_machine", "lamp"],
        "kitchen": ["kitchen_sink", "refrigerator"],
        "living_room": ["sofa", "tv"],
        "bathroom_1": ["bathroom_sink", "mirror"],
        "dining_room": ["plant", "desk"],
        "hub": ["charging_station"],
    },
)

EXPECTED = {"parole": (7, 31), "kemblesville": (9, 16), "allensville": (11, 42),
            "shelbiana": (12, 34)}

out_dir = Path(__file__).resolve().parent.parent / "assets" / "scenes"
out_dir.mkdir(parents=True, exist_ok=True)
for name, (doc, n_rooms, n_items) in SCENES.items():
    want = EXPECTED[name]
    assert (n_rooms, n_items) == want, f"{name}: got {(n_rooms, n_items)}, want {want}"
    (out_dir / f"{name}.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"{name}: {n_rooms} rooms, {n_items} items")
