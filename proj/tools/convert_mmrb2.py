#!/usr/bin/env python3
"""Convert an MMRB2-style release into the samples.jsonl layout.

This is a starting point, not a finished importer: published releases name
their fields differently across versions. Point FIELD_MAP at the right keys
for the copy you have, then run:

    python3 tools/convert_mmrb2.py <mmrb2_dir> <output_dir>

The script expects one JSON/JSONL file per subtask under <mmrb2_dir> and
copies referenced images alongside the output samples.jsonl.
"""

import json
import pathlib
import shutil
import sys

# Map our schema fields to the source release's keys. Adjust to taste.
FIELD_MAP = {
    "id": "id",
    "prompt_text": "prompt",
    "prompt_images": "prompt_images",
    "response_a_text": "response_a",
    "response_a_images": "response_a_images",
    "response_b_text": "response_b",
    "response_b_images": "response_b_images",
    "label": "label",  # expects "A"/"B"; adjust if the release uses 0/1
}

# Source file name (without extension) per subtask.
SUBTASK_FILES = {
    "t2i": "text_to_image",
    "editing": "image_editing",
    "interleaved": "interleaved_generation",
    "reasoning": "multimodal_reasoning",
}


def iter_records(path: pathlib.Path):
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".jsonl":
        for line in text.splitlines():
            if line.strip():
                yield json.loads(line)
    else:
        data = json.loads(text)
        yield from (data if isinstance(data, list) else data.get("samples", []))


def convert(source_dir: pathlib.Path, output_dir: pathlib.Path) -> int:
    output_dir.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(output_dir / "samples.jsonl", "w", encoding="utf-8") as out:
        for task, stem in SUBTASK_FILES.items():
            source = next(
                (p for p in (source_dir / f"{stem}.jsonl", source_dir / f"{stem}.json") if p.exists()),
                None,
            )
            if source is None:
                print(f"warning: no source file for subtask {task} ({stem}.json[l])", file=sys.stderr)
                continue
            for record in iter_records(source):
                sample = {"task": task}
                for ours, theirs in FIELD_MAP.items():
                    if theirs in record:
                        sample[ours] = record[theirs]
                sample.setdefault("id", f"{task}-{count}")
                for key in ("prompt_images", "response_a_images", "response_b_images"):
                    images = sample.get(key) or []
                    copied = []
                    for image in images:
                        src = source_dir / image
                        if src.exists():
                            dst = output_dir / pathlib.Path(image).name
                            if not dst.exists():
                                shutil.copyfile(src, dst)
                            copied.append(dst.name)
                        else:
                            copied.append(image)  # URL or data URI: pass through
                    sample[key] = copied
                out.write(json.dumps(sample, ensure_ascii=False) + "\n")
                count += 1
    return count


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 1
    count = convert(pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2]))
    print(f"wrote {count} samples")
    return 0 if count > 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
