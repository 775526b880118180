#!/usr/bin/env python3
# Copyright 2026 The Sketchguide Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes a small synthetic COCO-captions / LVIS-instances pair in the public
schema: 50 usable images plus a few that the loader must drop.

Usage: make_coco_slice.py OUT_DIR
"""
import json
import math
import random
import sys
from pathlib import Path

CATEGORIES = ["person", "zebra", "giraffe", "bus", "surfboard", "tv", "dog", "cat", "boat", "kite",
              "umbrella", "bench", "bird", "car", "pizza", "cup"]

WORDS = ["A", "An old", "Some", "The", "Two", "Several"]


def polygon(rng, cx, cy, rx, ry, n):
    pts = []
    for k in range(n):
        t = 2 * math.pi * k / n
        r = rng.uniform(0.75, 1.0)
        pts += [round(cx + r * rx * math.cos(t), 2), round(cy + r * ry * math.sin(t), 2)]
    return pts


def bbox_of(flat):
    xs, ys = flat[0::2], flat[1::2]
    return [round(min(xs), 2), round(min(ys), 2), round(max(xs) - min(xs), 2), round(max(ys) - min(ys), 2)]


def shoelace(flat):
    xs, ys = flat[0::2], flat[1::2]
    n = len(xs)
    return round(abs(sum(xs[i] * ys[(i + 1) % n] - xs[(i + 1) % n] * ys[i] for i in range(n))) / 2, 2)


def main():
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(2023)
    images, captions, instances = [], [], []
    cats = [{"id": i + 1, "name": n} for i, n in enumerate(CATEGORIES)]
    ann_id = 1
    cap_id = 1

    def add_instance(image_id, cat, flat, iscrowd=0, rle=False):
        nonlocal ann_id
        seg = {"counts": [0, 10, 5], "size": [10, 10]} if rle else [flat]
        instances.append({"id": ann_id, "image_id": image_id, "category_id": cat, "segmentation": seg,
                          "bbox": bbox_of(flat), "area": shoelace(flat), "iscrowd": iscrowd})
        ann_id += 1

    def add_caption(image_id, text):
        nonlocal cap_id
        captions.append({"id": cap_id, "image_id": image_id, "caption": text})
        cap_id += 1

    image_ids = sorted(rng.sample(range(100, 600000), 52))
    for idx, image_id in enumerate(image_ids):
        w, h = rng.choice([(640, 480), (480, 640), (640, 427), (500, 375), (612, 612)])
        images.append({"id": image_id, "width": w, "height": h,
                       "coco_url": f"http://images.cocodataset.org/train2017/{image_id:012d}.jpg"})
        if idx == 0:
            # two zebras side by side
            add_instance(image_id, 2, polygon(rng, w * 0.33, h * 0.55, w * 0.15, h * 0.2, 12))
            add_instance(image_id, 2, polygon(rng, w * 0.66, h * 0.55, w * 0.15, h * 0.2, 12))
            add_caption(image_id, "Two zebras seem to be embracing in the wild")
            add_caption(image_id, "A pair of zebras standing close together on the grass.")
            continue
        if idx == 1:
            # crowded scene beyond the grounding cap
            for k in range(45):
                gx, gy = k % 9, k // 9
                add_instance(image_id, 1, polygon(rng, (gx + 0.5) * w / 9, (gy + 0.5) * h / 5,
                                                  w / 22 + k % 4, h / 14, 8))
            add_caption(image_id, "A large crowd of people gathered in a plaza.")
            continue
        if idx == 2:
            # crowd region is dropped, the regular instance is kept; one RLE mask is skipped
            add_instance(image_id, 1, polygon(rng, w * 0.5, h * 0.5, w * 0.3, h * 0.3, 10), iscrowd=1)
            add_instance(image_id, 7, polygon(rng, w * 0.3, h * 0.7, w * 0.1, h * 0.1, 10))
            add_instance(image_id, 8, polygon(rng, w * 0.7, h * 0.3, w * 0.1, h * 0.1, 10), rle=True)
            add_caption(image_id, "A dog sitting in front of a crowd.")
            continue
        if idx == 3:
            # instances but no caption: dropped
            add_instance(image_id, 3, polygon(rng, w * 0.5, h * 0.5, w * 0.2, h * 0.2, 10))
            continue
        if idx == 4:
            # caption but no instances: dropped
            add_caption(image_id, "An empty field under a grey sky.")
            continue
        if idx == 5:
            # only a crowd instance: dropped once it is removed
            add_instance(image_id, 1, polygon(rng, w * 0.5, h * 0.5, w * 0.4, h * 0.4, 10), iscrowd=1)
            add_caption(image_id, "People everywhere.")
            continue
        n = rng.randint(1, 6)
        for _ in range(n):
            cat = rng.randint(1, len(CATEGORIES))
            cx, cy = rng.uniform(0.1, 0.9) * w, rng.uniform(0.1, 0.9) * h
            rx, ry = rng.uniform(0.04, 0.2) * w, rng.uniform(0.04, 0.2) * h
            flat = polygon(rng, cx, cy, rx, ry, rng.randint(5, 14))
            # a few masks poke outside the frame
            add_instance(image_id, cat, flat)
        names = sorted({CATEGORIES[i["category_id"] - 1] for i in instances if i["image_id"] == image_id})
        add_caption(image_id, f"{rng.choice(WORDS)} {' and '.join(names)} in a photo.")
        if rng.random() < 0.3:
            add_caption(image_id, f"A picture with a {names[0]}.")

    # a usable-image count of exactly 50
    extra = images[-1]["id"] + 1
    images.append({"id": extra, "width": 640, "height": 480, "file_name": f"{extra:012d}.jpg"})
    add_instance(extra, 6, polygon(rng, 320, 120, 120, 80, 4))
    add_instance(extra, 5, polygon(rng, 320, 380, 250, 40, 8))
    add_caption(extra, "A tv above a surfboard.")

    coco = {"info": {"description": "synthetic slice"}, "images": images, "annotations": captions}
    lvis = {"info": {"description": "synthetic slice"}, "images": images, "annotations": instances,
            "categories": cats}
    (out / "captions.json").write_text(json.dumps(coco, indent=1) + "\n")
    (out / "lvis.json").write_text(json.dumps(lvis, indent=1) + "\n")


if __name__ == "__main__":
    main()
