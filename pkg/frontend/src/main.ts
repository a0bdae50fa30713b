import { configFromLocation, mount } from './app.js';

const root = document.getElementById('dashboard');
if (root) {
  void mount(root, configFromLocation(window.location));
}
