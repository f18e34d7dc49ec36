// Scripted drive of the full loop: query at step-2 state, emit feedback,
// re-query and observe the reinforced single answer. The mocked service
// replays responses captured from the real engine (tests/fixtures/loop.json,
// regenerated by generate.py), so what the explorer renders is checked
// against genuine wire data.

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { JSDOM } from 'jsdom';
import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { ExplorerApp } from '../src/app.js';

const here = dirname(fileURLToPath(import.meta.url));
const fixtures = JSON.parse(readFileSync(join(here, 'fixtures', 'loop.json'), 'utf-8'));
const pageHtml = readFileSync(join(here, '..', 'index.html'), 'utf-8');

interface Recorded {
  url: string;
  method: string;
  body: any;
}

class FakeService {
  calls: Recorded[] = [];
  feedbackDone = false;
  down = false;

  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? 'GET';
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    this.calls.push({ url, method, body });
    if (this.down) {
      throw new TypeError('fetch failed');
    }
    const path = new URL(url).pathname;
    const json = (payload: unknown) => new Response(JSON.stringify(payload), { status: 200 });
    if (path === '/resources') return json(fixtures.resources_step2);
    if (path === '/version') {
      return json(this.feedbackDone ? fixtures.version_step3 : fixtures.version_step2);
    }
    if (path === '/query/paths') {
      if (body.perspective.exclude_emitters.length > 0) {
        return json(fixtures.step5_paths_exclude_self);
      }
      return json(this.feedbackDone ? fixtures.step3_paths : fixtures.step2_paths);
    }
    if (path === '/query/neighborhood') {
      return json(this.feedbackDone ? fixtures.step3_neighborhood : fixtures.step2_neighborhood);
    }
    if (path === '/feedback') {
      this.feedbackDone = true;
      return json(fixtures.feedback);
    }
    return new Response(JSON.stringify({ error: 'UnknownResource', detail: path }), { status: 404 });
  };
}

function renderedPaths(doc: Document): string[] {
  return [...doc.querySelectorAll('#path-results .path')].map((li) => li.textContent ?? '');
}

describe('the exploitation/feedback loop through the explorer', () => {
  let doc: Document;
  let app: ExplorerApp;
  let service: FakeService;

  beforeEach(async () => {
    const dom = new JSDOM(pageHtml, { url: 'http://ui.local/' });
    doc = dom.window.document;
    service = new FakeService();
    app = new ExplorerApp(doc, new ApiClient('http://svc.local', service.fetch as any));
    await app.init();
  });

  it('renders the step-2 double answer exactly as the service reports it', async () => {
    (doc.getElementById('identity') as HTMLSelectElement).value = 'B';
    doc.getElementById('identity')!.dispatchEvent(new doc.defaultView!.Event('change'));
    await Promise.resolve();
    (doc.getElementById('target') as HTMLSelectElement).value = 'apple';
    (doc.getElementById('run-paths') as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));

    const expected = fixtures.step2_paths;
    expect(app.lastAnswer).toEqual(expected);
    const items = renderedPaths(doc);
    expect(items).toEqual(
      expected.paths.map(
        (p: string[]) => `${p.join(' → ')} (length ${expected.best_length.toFixed(6)})`,
      ),
    );
    expect(doc.getElementById('tie-badge')!.textContent).toBe('2 tied answers');
    expect(doc.getElementById('answer-meta')!.textContent).toBe('best length 2.500000');
  });

  it('feedback reinforces the path and the next query shows the single answer', async () => {
    (doc.getElementById('identity') as HTMLSelectElement).value = 'B';
    doc.getElementById('identity')!.dispatchEvent(new doc.defaultView!.Event('change'));
    (doc.getElementById('target') as HTMLSelectElement).value = 'apple';
    (doc.getElementById('run-paths') as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));

    (doc.getElementById('feedback-document') as HTMLSelectElement).value = 'D1';
    (doc.getElementById('feedback-topic') as HTMLSelectElement).value = 'apple';
    (doc.getElementById('like') as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));

    const feedbackCall = service.calls.find((c) => c.url.endsWith('/feedback'));
    expect(feedbackCall!.body).toEqual({ agent: 'B', document: 'D1', topic: 'apple', polarity: 1 });
    // the write's new version is rendered from the response
    expect(doc.getElementById('version-banner')!.textContent).toBe(
      `graph version ${fixtures.feedback.version}`,
    );

    (doc.getElementById('run-paths') as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));
    expect(app.lastAnswer).toEqual(fixtures.step3_paths);
    expect(renderedPaths(doc)).toEqual(['B → D1 → apple (length 1.333333)']);
    expect(doc.getElementById('tie-badge')!.textContent).toBe('');
  });

  it('exclude-self submits defaults merged with the identity exclusion', async () => {
    (doc.getElementById('identity') as HTMLSelectElement).value = 'B';
    doc.getElementById('identity')!.dispatchEvent(new doc.defaultView!.Event('change'));
    const toggle = doc.getElementById('exclude-self') as HTMLInputElement;
    toggle.checked = true;
    toggle.dispatchEvent(new doc.defaultView!.Event('change'));

    (doc.getElementById('target') as HTMLSelectElement).value = 'apple';
    (doc.getElementById('run-paths') as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));

    const call = service.calls.filter((c) => c.url.endsWith('/query/paths')).at(-1)!;
    expect(call.body.perspective).toEqual({
      paradigm_weights: { logic: 1, mine: 1, feel: 1 },
      trust: { default: 1, per_agent: {} },
      half_life: null,
      exclude_emitters: ['B'],
      clamp_negative: true,
    });
    // three equidistant documents, all highlighted as ties
    expect(doc.getElementById('tie-badge')!.textContent).toBe('3 tied answers');
    expect(renderedPaths(doc)).toHaveLength(3);
  });

  it('unknown targets are caught inline without a request', async () => {
    (doc.getElementById('identity') as HTMLSelectElement).value = 'B';
    doc.getElementById('identity')!.dispatchEvent(new doc.defaultView!.Event('change'));
    await Promise.resolve();
    const before = service.calls.filter((c) => c.url.endsWith('/query/paths')).length;
    const target = doc.getElementById('target') as HTMLSelectElement;
    const ghost = doc.createElement('option');
    ghost.value = 'ghost';
    target.appendChild(ghost);
    target.value = 'ghost';
    (doc.getElementById('run-paths') as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));
    expect(doc.getElementById('query-validation')!.textContent).toContain('unknown target');
    expect(service.calls.filter((c) => c.url.endsWith('/query/paths'))).toHaveLength(before);
  });

  it('a dead service surfaces a visible error with a retry affordance', async () => {
    service.down = true;
    await app.pollVersion();
    const banner = doc.getElementById('error-banner')!;
    expect(banner.classList.contains('visible')).toBe(true);
    expect(doc.getElementById('error-message')!.textContent).not.toBe('');

    service.down = false;
    (doc.getElementById('retry') as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));
    expect(banner.classList.contains('visible')).toBe(false);
  });

  it('version polling refreshes the neighborhood when the graph moves', async () => {
    const before = service.calls.filter((c) => c.url.endsWith('/query/neighborhood')).length;
    service.feedbackDone = true; // another consumer appended elsewhere
    await app.pollVersion();
    await new Promise((r) => setTimeout(r, 0));
    expect(doc.getElementById('version-banner')!.textContent).toBe(
      `graph version ${fixtures.version_step3.version}`,
    );
    const after = service.calls.filter((c) => c.url.endsWith('/query/neighborhood')).length;
    expect(after).toBeGreaterThan(before);
  });
});
