import { ApiClient } from './api.js';
import { ExplorerApp } from './app.js';

const params = new URLSearchParams(window.location.search);
const base = params.get('service') ?? 'http://127.0.0.1:8800';

const app = new ExplorerApp(document, new ApiClient(base));
void app.init().then(() => app.start());
